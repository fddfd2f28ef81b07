#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ionmirror/config.hpp"
#include "ionmirror/rng.hpp"
#include "ionmirror/step.hpp"

namespace ionmirror {

// Everything one trajectory produced.  detector_log holds the q_N outcome
// of every step in order; photon_count is the number of ones in it.
// population_trace samples the ion excited population once per step, right
// before the detector measurement.
struct TrajectoryRecord {
    long steps = 0;
    long photon_count = 0;
    std::vector<std::uint8_t> detector_log;
    std::vector<double> population_trace;
    double max_norm_error = 0.0;
};

inline double time_averaged_population(const TrajectoryRecord& record) {
    if (record.population_trace.empty())
        throw std::invalid_argument("time_averaged_population: empty trace");
    double s = 0.0;
    for (double v : record.population_trace)
        s += v;
    return s / static_cast<double>(record.population_trace.size());
}

// Upper bound on steps_per_run, overridable through the environment so a
// misconfigured sweep fails fast instead of grinding for hours.
inline long trajectory_step_cap() {
    if (const char* env = std::getenv("IONMIRROR_MAX_STEPS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
        throw std::runtime_error("IONMIRROR_MAX_STEPS must be a positive integer");
    }
    return 10000000L;
}

namespace detail {

class PopulationSampler : public ExecutionObserver {
public:
    PopulationSampler(int ion_qubit, std::vector<double>& trace)
        : ion_qubit_(ion_qubit), trace_(trace) {}

    void before_op(std::size_t, const GateOp& op, const StateVector& state) override {
        if (op.kind == OpKind::Measure && op.classical_bit == StepBuilder::detector_bit)
            trace_.push_back(state.excited_population(ion_qubit_));
    }

private:
    int ion_qubit_;
    std::vector<double>& trace_;
};

} // namespace detail

// Runs one quantum trajectory of steps_per_run collision steps from the
// global vacuum.  Deterministic in (config, seed).
inline TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed,
                                       StepMode mode = StepMode::DenseInteractions) {
    config.validate();
    const long steps = config.steps_per_run();
    const long cap = trajectory_step_cap();
    if (steps > cap)
        throw std::runtime_error("run_trajectory: steps_per_run = " + std::to_string(steps) +
                                 " exceeds the step cap of " + std::to_string(cap) +
                                 " (override with IONMIRROR_MAX_STEPS)");

    const StepBuilder builder(config, mode);
    StateVector state(config.num_qubits(), 0);
    Prng rng(seed);

    TrajectoryRecord record;
    record.steps = steps;
    record.detector_log.reserve(static_cast<std::size_t>(steps));
    record.population_trace.reserve(static_cast<std::size_t>(steps));
    detail::PopulationSampler sampler(builder.ion_qubit(), record.population_trace);

    for (long l = 0; l < steps; ++l) {
        const Circuit step = builder.build(l);
        ClassicalRegister creg(step.classical_width());
        step.execute(state, creg, rng, &sampler);
        const std::uint8_t bit = creg.get(StepBuilder::detector_bit);
        record.detector_log.push_back(bit);
        record.photon_count += bit;
        record.max_norm_error = std::max(record.max_norm_error, std::abs(state.norm() - 1.0));
    }
    return record;
}

// Aggregated statistics for one mirror distance.  The distance is kept in
// nanometres, the unit of the external interface; dynamics always run on
// the SI value in ExperimentConfig.
struct DistanceSample {
    double distance_nm = 0.0;
    double mean_photon_count = 0.0;
    double std_error = 0.0;
    double mean_population = 0.0;
    long runs = 0;
    long steps = 0;
};

struct SweepResult {
    std::vector<DistanceSample> rows;
};

namespace detail {

// Index-sharded worker pool.  Results are written into preallocated slots,
// so the reduction order afterwards never depends on scheduling.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace detail

// Runs config.runs trajectories at every distance and aggregates photon and
// population statistics.  The per-trajectory seed is derive_run_seed(master,
// distance index, run index) over the distance list as given, so the result
// is byte-for-byte identical for any thread count; rows come back sorted by
// distance.  threads <= 1 runs serially, 0 picks the hardware concurrency.
inline SweepResult sweep_distance(const ExperimentConfig& base, const std::vector<double>& distances,
                                  int threads = 1, StepMode mode = StepMode::DenseInteractions) {
    base.validate();
    if (distances.empty())
        throw std::invalid_argument("sweep_distance: no distances given");
    for (double d : distances)
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("sweep_distance: distances must be positive");
    if (threads == 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;

    const std::size_t nd = distances.size();
    const std::size_t runs = static_cast<std::size_t>(base.runs);
    std::vector<double> photons(nd * runs, 0.0);
    std::vector<double> populations(nd * runs, 0.0);

    detail::parallel_for(nd * runs, threads, [&](std::size_t job) {
        const std::size_t d_idx = job / runs;
        const std::size_t r_idx = job % runs;
        ExperimentConfig cfg = base;
        cfg.distance = distances[d_idx];
        try {
            const TrajectoryRecord rec =
                run_trajectory(cfg, derive_run_seed(base.master_seed, d_idx, r_idx), mode);
            if (rec.max_norm_error > 1e-9)
                throw std::runtime_error("state norm drifted by " +
                                         std::to_string(rec.max_norm_error));
            photons[job] = static_cast<double>(rec.photon_count);
            populations[job] = time_averaged_population(rec);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep_distance: at distance " +
                                     std::to_string(cfg.distance) + " m: " + e.what());
        }
    });

    SweepResult result;
    result.rows.reserve(nd);
    for (std::size_t d_idx = 0; d_idx < nd; ++d_idx) {
        const double* ph = photons.data() + d_idx * runs;
        const double* po = populations.data() + d_idx * runs;
        double mean_ph = 0.0, mean_po = 0.0;
        for (std::size_t r = 0; r < runs; ++r) {
            mean_ph += ph[r];
            mean_po += po[r];
        }
        mean_ph /= static_cast<double>(runs);
        mean_po /= static_cast<double>(runs);
        double var = 0.0;
        for (std::size_t r = 0; r < runs; ++r)
            var += (ph[r] - mean_ph) * (ph[r] - mean_ph);
        const double std_err =
            runs > 1 ? std::sqrt(var / static_cast<double>(runs - 1)) /
                           std::sqrt(static_cast<double>(runs))
                     : 0.0;

        ExperimentConfig cfg = base;
        cfg.distance = distances[d_idx];
        DistanceSample row;
        row.distance_nm = distances[d_idx] * 1e9;
        row.mean_photon_count = mean_ph;
        row.std_error = std_err;
        row.mean_population = mean_po;
        row.runs = base.runs;
        row.steps = cfg.steps_per_run();
        result.rows.push_back(row);
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const DistanceSample& a, const DistanceSample& b) {
                         return a.distance_nm < b.distance_nm;
                     });
    return result;
}

} // namespace ionmirror
