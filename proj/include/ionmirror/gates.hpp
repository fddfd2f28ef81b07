#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ionmirror/matrix.hpp"
#include "ionmirror/state.hpp"

namespace ionmirror {

// Single-qubit basis: |0> is the ground / vacuum state, |1> the excited /
// occupied state.  sigma_minus = |0><1| lowers, sigma_plus raises.

inline GateMatrix sigma_minus() {
    GateMatrix m(2);
    m(0, 1) = 1.0;
    return m;
}

inline GateMatrix sigma_plus() {
    GateMatrix m(2);
    m(1, 0) = 1.0;
    return m;
}

inline GateMatrix pauli_x() {
    GateMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline GateMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    GateMatrix m(2);
    m(0, 0) = r;
    m(0, 1) = r;
    m(1, 0) = r;
    m(1, 1) = -r;
    return m;
}

inline GateMatrix phase_s() {
    GateMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = cplx(0.0, 1.0);
    return m;
}

inline GateMatrix phase_sdg() {
    GateMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = cplx(0.0, -1.0);
    return m;
}

// Ry(theta) = exp(-i theta Y / 2)
inline GateMatrix ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    GateMatrix m(2);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

// Rz(theta) = exp(-i theta Z / 2)
inline GateMatrix rz(double theta) {
    GateMatrix m(2);
    m(0, 0) = std::polar(1.0, -theta / 2.0);
    m(1, 1) = std::polar(1.0, theta / 2.0);
    return m;
}

// Control goes on the new most significant slot: targets[0] is the control,
// the remaining targets carry u.
inline GateMatrix controlled(const GateMatrix& u) {
    const std::size_t d = u.dim();
    GateMatrix m(2 * d);
    for (std::size_t i = 0; i < d; ++i)
        m(i, i) = 1.0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(d + r, d + c) = u(r, c);
    return m;
}

inline GateMatrix cnot() { return controlled(pauli_x()); }

inline GateMatrix swap_gate() {
    GateMatrix m(4);
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

inline GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    GateMatrix m(da * db);
    for (std::size_t ra = 0; ra < da; ++ra)
        for (std::size_t ca = 0; ca < da; ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{})
                continue;
            for (std::size_t rb = 0; rb < db; ++rb)
                for (std::size_t cb = 0; cb < db; ++cb)
                    m(ra * db + rb, ca * db + cb) = v * b(rb, cb);
        }
    return m;
}

// Name-based access to the standard set, mostly for dumps and small tools.
inline GateMatrix standard_gate(std::string_view name, std::span<const double> params = {}) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("standard_gate: wrong parameter count for " + std::string(name));
    };
    if (name == "x") { want(0); return pauli_x(); }
    if (name == "h") { want(0); return hadamard(); }
    if (name == "s") { want(0); return phase_s(); }
    if (name == "sdg") { want(0); return phase_sdg(); }
    if (name == "ry") { want(1); return ry(params[0]); }
    if (name == "rz") { want(1); return rz(params[0]); }
    if (name == "cnot") { want(0); return cnot(); }
    if (name == "swap") { want(0); return swap_gate(); }
    throw std::invalid_argument("standard_gate: unknown gate " + std::string(name));
}

// Physical coupling strengths together with the collision time step
// lambda = sqrt(lambda^2).  kappa and kappa_s are the mirror-channel and
// side-channel decay rates, omega the transition (and drive) angular
// frequency, alpha_mod the drive amplitude |alpha|.
struct PhysicalCouplings {
    double kappa = 0.0;     // 1/s
    double kappa_s = 0.0;   // 1/s
    double omega = 0.0;     // rad/s
    double alpha_mod = 0.0; // sqrt(1/s)
    double lambda = 0.0;    // sqrt(s)

    double rabi_frequency() const { return alpha_mod * std::sqrt(kappa_s); }

    void validate() const {
        if (!(std::isfinite(kappa) && std::isfinite(kappa_s) && std::isfinite(omega) &&
              std::isfinite(alpha_mod) && std::isfinite(lambda)))
            throw std::invalid_argument("PhysicalCouplings: non-finite value");
        if (kappa < 0.0 || kappa_s < 0.0 || alpha_mod < 0.0)
            throw std::invalid_argument("PhysicalCouplings: rates must be non-negative");
        if (lambda <= 0.0)
            throw std::invalid_argument("PhysicalCouplings: lambda must be positive");
    }

    // The collision expansion assumes the per-step interaction angles stay
    // small.  The step phase omega * lambda^2 may exceed one by design, so
    // only the amplitude angles are flagged.
    std::vector<std::string> perturbative_warnings() const {
        std::vector<std::string> w;
        auto check = [&](double angle, const char* label) {
            if (angle > 0.5)
                w.push_back(std::string(label) + " = " + std::to_string(angle) +
                            " leaves the perturbative regime (> 0.5)");
        };
        check(std::sqrt(kappa) * lambda, "sqrt(kappa)*lambda");
        check(std::sqrt(kappa_s) * lambda, "sqrt(kappa_s)*lambda");
        check(alpha_mod * lambda, "|alpha|*lambda");
        return w;
    }
};

// Ion coupled to the two mirror-channel slices that sit at its position,
// slot order (ion, c1 slice, c2 slice):
//   exp(sqrt(kappa) lambda (s- s+ I - s+ s- I + s- I s+ - s+ I s-))
// On |e00> this rotates towards the symmetric one-photon state by the
// angle sqrt(2 kappa) lambda; the antisymmetric combination is dark.
inline GateMatrix r_interaction(double kappa, double lambda) {
    const double a = std::sqrt(kappa) * lambda;
    const GateMatrix sm = sigma_minus(), sp = sigma_plus(), id = GateMatrix::identity(2);
    GateMatrix gen = kron(sm, kron(sp, id));
    GateMatrix t2 = kron(sp, kron(sm, id));
    t2 *= -1.0;
    gen += t2;
    gen += kron(sm, kron(id, sp));
    GateMatrix t4 = kron(sp, kron(id, sm));
    t4 *= -1.0;
    gen += t4;
    gen *= a;
    return expm(gen);
}

// Ion coupled to the laser qubit, slot order (ion, laser):
//   exp(sqrt(kappa_s) lambda (s- s+ - s+ s-))
inline GateMatrix q_interaction(double kappa_s, double lambda) {
    const double a = std::sqrt(kappa_s) * lambda;
    GateMatrix gen = kron(sigma_minus(), sigma_plus());
    GateMatrix t2 = kron(sigma_plus(), sigma_minus());
    t2 *= -1.0;
    gen += t2;
    gen *= a;
    return expm(gen);
}

// Free phase evolution of the ion over one step:
//   exp(-i omega sigma+ sigma- lambda^2) = diag(1, e^{-i omega lambda^2})
// equal to Rz(-omega lambda^2) up to a global phase.
inline GateMatrix l_evolution(double omega, double lambda) {
    GateMatrix gen(2);
    gen(1, 1) = cplx(0.0, -omega * lambda * lambda);
    return expm(gen);
}

// Laser qubit preparation for step l, to be applied to |0> in order:
// Ry(2 |alpha| lambda) then Rz(-omega l lambda^2).  Up to a global phase the
// product equals the displacement exp(lambda alpha s+ - lambda conj(alpha) s-)
// acting on vacuum, with alpha = |alpha| e^{-i omega l lambda^2}.
struct LaserPrep {
    GateMatrix ry;
    GateMatrix rz;
};

inline LaserPrep laser_prep_sequence(const PhysicalCouplings& pc, long step_index) {
    return LaserPrep{ry(2.0 * pc.alpha_mod * pc.lambda),
                     rz(-pc.omega * static_cast<double>(step_index) * pc.lambda * pc.lambda)};
}

// One gate of a decomposition, expressed on abstract slot numbers that the
// circuit builder later maps onto register qubits.  targets[0] is the most
// significant matrix sub-index (the control for controlled gates).
struct StagedGate {
    GateMatrix u;
    std::array<int, 3> slots;
    int arity;
    std::string label;
};

// Elementary-gate form of q_interaction on slots (0 = ion, 1 = laser):
// CNOT ion->laser, laser-controlled Ry(-2 sqrt(kappa_s) lambda) on the ion,
// CNOT ion->laser.
inline std::vector<StagedGate> q_decomposition(double kappa_s, double lambda) {
    const double theta = std::sqrt(kappa_s) * lambda;
    std::vector<StagedGate> g;
    g.push_back({cnot(), {0, 1, -1}, 2, "cx"});
    g.push_back({controlled(ry(-2.0 * theta)), {1, 0, -1}, 2, "cry"});
    g.push_back({cnot(), {0, 1, -1}, 2, "cx"});
    return g;
}

// Basis-change gate of the three-qubit decomposition below.  H S_dagger
// closes the gate pattern exactly (verified against the dense exponential
// in the test suite); it maps the +-i eigenbasis of Y onto the
// computational basis so the block rotations become controlled Ry gates.
inline GateMatrix v_basis_gate() { return hadamard() * phase_sdg(); }

// Elementary-gate form of r_interaction on slots (0 = ion, 1 = c1, 2 = c2):
// ten CNOTs, two controlled-H, a controlled rotation pair with angle
// 2 sqrt(2 kappa) lambda, and the four single-qubit gates S, S_dagger,
// V, V_dagger.  Composes to the dense 8x8 exponential with global phase 1.
inline std::vector<StagedGate> r_decomposition(double kappa, double lambda) {
    const double tilde = 2.0 * std::sqrt(2.0 * kappa) * lambda;
    const GateMatrix v = v_basis_gate();
    const GateMatrix ch = controlled(hadamard());
    std::vector<StagedGate> g;
    g.push_back({cnot(), {2, 0, -1}, 2, "cx"});
    g.push_back({cnot(), {2, 1, -1}, 2, "cx"});
    g.push_back({cnot(), {0, 2, -1}, 2, "cx"});
    g.push_back({v, {2, -1, -1}, 1, "v"});
    g.push_back({ch, {1, 0, -1}, 2, "ch"});
    g.push_back({phase_s(), {0, -1, -1}, 1, "s"});
    g.push_back({cnot(), {2, 1, -1}, 2, "cx"});
    g.push_back({cnot(), {0, 1, -1}, 2, "cx"});
    g.push_back({controlled(ry(-tilde)), {1, 0, -1}, 2, "cry"});
    g.push_back({controlled(ry(tilde)), {2, 0, -1}, 2, "cry"});
    g.push_back({cnot(), {0, 1, -1}, 2, "cx"});
    g.push_back({phase_sdg(), {0, -1, -1}, 1, "sdg"});
    g.push_back({cnot(), {2, 1, -1}, 2, "cx"});
    g.push_back({ch, {1, 0, -1}, 2, "ch"});
    g.push_back({v.dagger(), {2, -1, -1}, 1, "vdg"});
    g.push_back({cnot(), {0, 2, -1}, 2, "cx"});
    g.push_back({cnot(), {2, 1, -1}, 2, "cx"});
    g.push_back({cnot(), {2, 0, -1}, 2, "cx"});
    return g;
}

// Dense matrix of a staged-gate sequence on num_slots qubits, built by
// running every basis column through the state engine.
inline GateMatrix compose_on_slots(const std::vector<StagedGate>& gates, int num_slots) {
    const std::size_t d = std::size_t(1) << num_slots;
    GateMatrix full(d);
    for (std::size_t col = 0; col < d; ++col) {
        StateVector sv(num_slots, col);
        for (const auto& g : gates)
            sv.apply_unitary(g.u, std::span<const int>(g.slots.data(), g.arity));
        for (std::size_t row = 0; row < d; ++row)
            full(row, col) = sv.amplitude(row);
    }
    return full;
}

// Deviation of a circuit-built unitary from its reference, minimised over a
// global phase.  Identical matrices give zero; verify(X, I) gives 2.
inline double verify_decomposition(const GateMatrix& circuit, const GateMatrix& reference) {
    return distance_up_to_phase(circuit, reference);
}

} // namespace ionmirror
