#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionmirror/config.hpp"

namespace ionmirror {

// Everything the command line can set, in the units the command line uses
// (nanometres, femtoseconds, multiples of the transition frequency).
struct CliConfig {
    std::string mode = "sweep"; // sweep | single | verify | census
    double distance_min_nm = 50.0;
    double distance_max_nm = 550.0;
    int distance_steps = 51;
    int field_qubits = 5;
    double omega_factor = 1.0;  // ion frequency / transition frequency
    double rabi_factor = 0.01;  // Rabi frequency / ion frequency
    double kappa = 6e12;
    double kappa_s = 3e13;
    double sim_time_fs = 100.0;
    int runs = 1000;
    std::uint64_t seed = 1;
    std::string output_path;
    int threads = 0; // 0 = hardware concurrency
    bool full_decomposition = false;

    void validate() const {
        if (mode != "sweep" && mode != "single" && mode != "verify" && mode != "census")
            throw std::invalid_argument("unknown mode: " + mode);
        if (!(distance_min_nm > 0.0) || !(distance_max_nm >= distance_min_nm))
            throw std::invalid_argument("distance range must satisfy 0 < min <= max");
        if (distance_steps < 1)
            throw std::invalid_argument("distance_steps must be >= 1");
        if (distance_steps == 1 && distance_max_nm != distance_min_nm)
            throw std::invalid_argument("a single distance step needs min == max");
        if (!(omega_factor > 0.0))
            throw std::invalid_argument("omega_factor must be positive");
        if (!(rabi_factor >= 0.0))
            throw std::invalid_argument("rabi_factor must be non-negative");
        if (!(sim_time_fs > 0.0))
            throw std::invalid_argument("sim_time_fs must be positive");
        if (runs < 1)
            throw std::invalid_argument("runs must be >= 1");
        if (threads < 0)
            throw std::invalid_argument("threads must be >= 0");
    }

    std::vector<double> distances_m() const {
        validate();
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(distance_steps));
        if (distance_steps == 1) {
            out.push_back(distance_min_nm * 1e-9);
            return out;
        }
        const double step = (distance_max_nm - distance_min_nm) / (distance_steps - 1);
        for (int i = 0; i < distance_steps; ++i)
            out.push_back((distance_min_nm + step * i) * 1e-9);
        return out;
    }
};

// Maps CLI units onto the solver configuration.  The distance slot is filled
// with the sweep minimum; sweep_distance overrides it per row.
inline ExperimentConfig make_experiment_config(const CliConfig& cli) {
    cli.validate();
    ExperimentConfig cfg;
    cfg.distance = cli.distance_min_nm * 1e-9;
    cfg.field_qubits = cli.field_qubits;
    cfg.omega = cli.omega_factor * constants::transition_omega;
    cfg.kappa = cli.kappa;
    cfg.kappa_s = cli.kappa_s;
    cfg.alpha_mod = cli.rabi_factor * cfg.omega / std::sqrt(cli.kappa_s);
    cfg.sim_time = cli.sim_time_fs * 1e-15;
    cfg.runs = cli.runs;
    cfg.master_seed = cli.seed;
    cfg.validate();
    return cfg;
}

} // namespace ionmirror
