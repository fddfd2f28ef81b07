#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionmirror/analysis.hpp"
#include "ionmirror/cli_config.hpp"
#include "ionmirror/csv.hpp"
#include "ionmirror/experiment.hpp"
#include "ionmirror/gates.hpp"
#include "ionmirror/step.hpp"

namespace ionmirror {

namespace detail {

inline int run_sweep(const CliConfig& cli, std::ostream& out) {
    const ExperimentConfig base = make_experiment_config(cli);
    for (const std::string& w : base.couplings().perturbative_warnings())
        std::cerr << "warning: " << w << "\n";
    const StepMode mode =
        cli.full_decomposition ? StepMode::FullDecomposition : StepMode::DenseInteractions;
    const SweepResult result = sweep_distance(base, cli.distances_m(), cli.threads, mode);

    std::vector<double> xs, ys;
    xs.reserve(result.rows.size());
    ys.reserve(result.rows.size());
    for (const DistanceSample& row : result.rows) {
        xs.push_back(row.distance_nm);
        ys.push_back(row.mean_photon_count);
    }
    FitResult fit;
    if (xs.size() >= 8)
        fit = fit_sinusoid(xs, ys);

    if (cli.output_path.empty()) {
        out << render_csv(result, fit, cli);
    } else {
        write_csv(result, fit, cli, cli.output_path);
        out << "wrote " << result.rows.size() << " rows to " << cli.output_path << "\n";
        if (fit.wavelength_defined)
            out << "fringe wavelength " << format_double(fit.wavelength) << " nm, amplitude "
                << format_double(fit.amplitude) << ", rms residual "
                << format_double(fit.rms_residual) << "\n";
    }
    return 0;
}

inline int run_single(const CliConfig& cli, std::ostream& out) {
    const ExperimentConfig base = make_experiment_config(cli);
    for (const std::string& w : base.couplings().perturbative_warnings())
        std::cerr << "warning: " << w << "\n";
    const StepMode mode =
        cli.full_decomposition ? StepMode::FullDecomposition : StepMode::DenseInteractions;
    const SweepResult result = sweep_distance(base, cli.distances_m(), cli.threads, mode);
    const DistanceSample& row = result.rows.front();
    out << "distance_nm=" << format_double(row.distance_nm)
        << " mean_photon_count=" << format_double(row.mean_photon_count)
        << " std_error=" << format_double(row.std_error)
        << " mean_population=" << format_double(row.mean_population) << " runs=" << row.runs
        << " steps=" << row.steps << "\n";
    if (!cli.output_path.empty())
        write_csv(result, FitResult{}, cli, cli.output_path);
    return 0;
}

inline int run_verify(const CliConfig& cli, std::ostream& out) {
    const ExperimentConfig cfg = make_experiment_config(cli);
    const PhysicalCouplings pc = cfg.couplings();

    const GateMatrix q_dense = q_interaction(pc.kappa_s, pc.lambda);
    const GateMatrix q_staged = compose_on_slots(q_decomposition(pc.kappa_s, pc.lambda), 2);
    const double q_dist = verify_decomposition(q_staged, q_dense);
    const GateMatrix r_dense = r_interaction(pc.kappa, pc.lambda);
    const GateMatrix r_staged = compose_on_slots(r_decomposition(pc.kappa, pc.lambda), 3);
    const double r_dist = verify_decomposition(r_staged, r_dense);

    constexpr double tol = 1e-10;
    out << "excitation-exchange decomposition distance: " << format_double(q_dist)
        << (q_dist < tol ? " ok" : " FAILED") << "\n";
    out << "mirror-interaction decomposition distance: " << format_double(r_dist)
        << (r_dist < tol ? " ok" : " FAILED") << "\n";
    return (q_dist < tol && r_dist < tol) ? 0 : 1;
}

inline int run_census(const CliConfig& cli, std::ostream& out) {
    ExperimentConfig cfg = make_experiment_config(cli);
    for (StepMode mode : {StepMode::DenseInteractions, StepMode::FullDecomposition}) {
        const StepBuilder builder(cfg, mode);
        const Circuit step = builder.build(0);
        const GateCensus census = gate_census(step);
        out << "mode=" << (mode == StepMode::DenseInteractions ? "dense" : "full")
            << " field_qubits=" << cfg.field_qubits << " single_qubit=" << census.single_qubit
            << " two_qubit=" << census.two_qubit << " three_qubit=" << census.three_qubit
            << " measurements=" << census.measurements << " resets=" << census.resets << "\n";
    }
    return 0;
}

} // namespace detail

// Entry point shared by the binary and the tests.  Returns the process exit
// code: 0 on success, 1 on a runtime failure, 2 on a usage error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CliConfig cli;
    double single_distance_nm = -1.0;

    CLI::App app{"Collision-model simulator for single-ion interference at a mirror"};
    app.add_option("--mode", cli.mode, "sweep | single | verify | census")
        ->check(CLI::IsMember({"sweep", "single", "verify", "census"}))
        ->capture_default_str();
    app.add_option("--distance-min", cli.distance_min_nm, "smallest mirror distance, nm")
        ->capture_default_str();
    app.add_option("--distance-max", cli.distance_max_nm, "largest mirror distance, nm")
        ->capture_default_str();
    app.add_option("--distance-steps", cli.distance_steps, "number of sweep points")
        ->capture_default_str();
    app.add_option("--distance", single_distance_nm,
                   "single mirror distance, nm (shorthand for min == max, one step)");
    app.add_option("--field-qubits", cli.field_qubits, "time slices per mirror round trip")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    app.add_option("--omega-factor", cli.omega_factor,
                   "ion frequency as a multiple of the 493 nm transition")
        ->capture_default_str();
    app.add_option("--rabi-factor", cli.rabi_factor, "Rabi frequency as a fraction of omega")
        ->capture_default_str();
    app.add_option("--kappa", cli.kappa, "ion-field coupling rate, 1/s")->capture_default_str();
    app.add_option("--kappa-s", cli.kappa_s, "laser-mode coupling rate, 1/s")
        ->capture_default_str();
    app.add_option("--sim-time", cli.sim_time_fs, "simulated time per run, fs")
        ->capture_default_str();
    app.add_option("--runs", cli.runs, "trajectories per distance")->capture_default_str();
    app.add_option("--seed", cli.seed, "master seed")->capture_default_str();
    app.add_option("-o,--output", cli.output_path, "CSV output path (default: stdout)");
    app.add_option("--threads", cli.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    app.add_flag("--full-decomposition", cli.full_decomposition,
                 "run steps as one- and two-qubit gates only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    if (single_distance_nm > 0.0) {
        cli.distance_min_nm = single_distance_nm;
        cli.distance_max_nm = single_distance_nm;
        cli.distance_steps = 1;
    }

    try {
        cli.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (cli.mode == "sweep")
            return detail::run_sweep(cli, out);
        if (cli.mode == "single")
            return detail::run_single(cli, out);
        if (cli.mode == "verify")
            return detail::run_verify(cli, out);
        return detail::run_census(cli, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ionmirror
