#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "ionmirror/gates.hpp"

namespace ionmirror {

namespace constants {

inline constexpr double speed_of_light = 299792458.0; // m/s

// 493 nm dipole transition of a single trapped Ba+ ion
inline constexpr double transition_wavelength = 493e-9; // m

inline const double transition_omega =
    2.0 * std::numbers::pi * speed_of_light / transition_wavelength; // rad/s

} // namespace constants

// Full description of one simulated run.  Distances, times and rates are
// SI throughout; unit conversions happen once at the CLI boundary.
//
// field_qubits is the number of time slices per mirror round trip, so
// lambda^2 = 2 d / (c * field_qubits).  The delay loop needs one slice
// qubit more than that: a slice written into q_0 is read back at q_N,
// N = field_qubits, exactly field_qubits steps later.  Register layout is
// ion, laser, then the q_0 .. q_N slices.
struct ExperimentConfig {
    double distance = 246.5e-9; // m, ion to mirror
    int field_qubits = 5;       // time slices per round trip
    double omega = constants::transition_omega;                    // rad/s
    double kappa = 6e12;                                           // 1/s
    double kappa_s = 3e13;                                         // 1/s
    double alpha_mod = 0.01 * constants::transition_omega / std::sqrt(3e13);
    double sim_time = 100e-15;  // s
    int runs = 1000;
    std::uint64_t master_seed = 1;

    void validate() const {
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw std::invalid_argument("ExperimentConfig: distance must be positive");
        if (field_qubits < 2 || field_qubits > 21)
            throw std::invalid_argument(
                "ExperimentConfig: field_qubits must be in [2, 21] (21 fills the state engine)");
        if (!(sim_time > 0.0) || !std::isfinite(sim_time))
            throw std::invalid_argument("ExperimentConfig: sim_time must be positive");
        if (runs < 1)
            throw std::invalid_argument("ExperimentConfig: runs must be at least 1");
        couplings().validate();
    }

    double lambda_sq() const {
        return 2.0 * distance / (constants::speed_of_light * field_qubits);
    }

    double lambda() const { return std::sqrt(lambda_sq()); }

    long steps_per_run() const {
        const long steps = std::lround(sim_time / lambda_sq());
        return steps < 1 ? 1 : steps;
    }

    int slice_qubits() const { return field_qubits + 1; } // q_0 .. q_N, N = field_qubits
    int num_qubits() const { return slice_qubits() + 2; } // plus ion and laser

    PhysicalCouplings couplings() const {
        return PhysicalCouplings{kappa, kappa_s, omega, alpha_mod, lambda()};
    }
};

} // namespace ionmirror
