#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "ionmirror/circuit.hpp"
#include "ionmirror/config.hpp"
#include "ionmirror/gates.hpp"

namespace ionmirror {

// DenseInteractions is the production path: the ion-field and ion-laser
// couplings enter as single dense unitaries.  FullDecomposition replaces
// them with their elementary-gate sequences and encodes both
// reinitialisations as measure-then-reset pairs, which reproduces the
// hardware-style operation counts (7 single-qubit, 17 + N two-qubit and
// two measurements per step).
enum class StepMode { DenseInteractions, FullDecomposition };

// Emits the circuit for one collision step l:
//   laser preparation Ry(2|alpha|lambda), Rz(-omega l lambda^2)
//   Q on (ion, laser)
//   R on (ion, q_0, q_N)
//   ion phase Rz(-omega lambda^2)
//   detector measurement of q_N, conditional flip back to vacuum
//   laser reinitialisation
//   cyclic field shift q_0 -> q_1 -> ... -> q_N -> q_0
// The shift is the swap chain (q_0 q_1), (q_0 q_2), ..., (q_0 q_N); a slice
// emitted into q_0 therefore returns to the interaction at q_N exactly
// field_qubits steps later, one mirror round trip.
class StepBuilder {
public:
    explicit StepBuilder(const ExperimentConfig& config,
                         StepMode mode = StepMode::DenseInteractions)
        : cfg_(config), mode_(mode) {
        cfg_.validate();
        const PhysicalCouplings pc = cfg_.couplings();
        prep_ry_ = share(laser_prep_sequence(pc, 0).ry);
        q_dense_ = share(q_interaction(pc.kappa_s, pc.lambda));
        r_dense_ = share(r_interaction(pc.kappa, pc.lambda));
        ion_rz_ = share(rz(-pc.omega * pc.lambda * pc.lambda));
        swap_ = share(swap_gate());
        x_ = share(pauli_x());
        for (auto& g : q_decomposition(pc.kappa_s, pc.lambda))
            q_staged_.push_back({share(g.u), g.slots, g.arity, g.label});
        for (auto& g : r_decomposition(pc.kappa, pc.lambda))
            r_staged_.push_back({share(g.u), g.slots, g.arity, g.label});
    }

    const ExperimentConfig& config() const { return cfg_; }
    StepMode mode() const { return mode_; }

    int ion_qubit() const { return 0; }
    int laser_qubit() const { return 1; }
    int field_qubit(int slot) const { return 2 + slot; } // slot 0 .. field_qubits

    int classical_width() const { return mode_ == StepMode::DenseInteractions ? 1 : 2; }
    static constexpr int detector_bit = 0;

    Circuit build(long step_index) const {
        if (step_index < 0)
            throw std::invalid_argument("StepBuilder: negative step index");
        const PhysicalCouplings pc = cfg_.couplings();
        const int n = cfg_.num_qubits();
        const int q0 = field_qubit(0);
        const int qN = field_qubit(cfg_.field_qubits);

        Circuit c(n, classical_width());
        add(c, prep_ry_, {laser_qubit()}, "ry");
        c.add_unitary(laser_prep_sequence(pc, step_index).rz, {laser_qubit()}, "rz");

        if (mode_ == StepMode::DenseInteractions) {
            add(c, q_dense_, {ion_qubit(), laser_qubit()}, "Q");
            add(c, r_dense_, {ion_qubit(), q0, qN}, "R");
        } else {
            emit_staged(c, q_staged_, {ion_qubit(), laser_qubit(), -1});
            emit_staged(c, r_staged_, {ion_qubit(), q0, qN});
        }

        add(c, ion_rz_, {ion_qubit()}, "rz");

        c.add_measure(qN, detector_bit);
        if (mode_ == StepMode::DenseInteractions) {
            c.add_classically_controlled(x_, span_of({qN}), detector_bit, "x");
            c.add_reset(laser_qubit());
        } else {
            c.add_reset(qN);
            c.add_measure(laser_qubit(), 1);
            c.add_reset(laser_qubit());
        }

        for (int slot = 1; slot <= cfg_.field_qubits; ++slot)
            add(c, swap_, {q0, field_qubit(slot)}, "swap");
        return c;
    }

private:
    struct SharedStaged {
        std::shared_ptr<const GateMatrix> u;
        std::array<int, 3> slots;
        int arity;
        std::string label;
    };

    static std::shared_ptr<const GateMatrix> share(GateMatrix m) {
        return std::make_shared<const GateMatrix>(std::move(m));
    }

    static std::span<const int> span_of(std::initializer_list<int> t) {
        return std::span<const int>(t.begin(), t.size());
    }

    void add(Circuit& c, const std::shared_ptr<const GateMatrix>& m,
             std::initializer_list<int> targets, const char* label) const {
        c.add_unitary(m, span_of(targets), label);
    }

    void emit_staged(Circuit& c, const std::vector<SharedStaged>& staged,
                     const std::array<int, 3>& slot_to_qubit) const {
        for (const auto& g : staged) {
            std::array<int, 3> t{};
            for (int j = 0; j < g.arity; ++j)
                t[j] = slot_to_qubit[static_cast<std::size_t>(g.slots[j])];
            c.add_unitary(g.u, std::span<const int>(t.data(), static_cast<std::size_t>(g.arity)),
                          g.label);
        }
    }

    ExperimentConfig cfg_;
    StepMode mode_;
    std::shared_ptr<const GateMatrix> prep_ry_, q_dense_, r_dense_, ion_rz_, swap_, x_;
    std::vector<SharedStaged> q_staged_, r_staged_;
};

inline Circuit build_time_step(const ExperimentConfig& config, long step_index,
                               StepMode mode = StepMode::DenseInteractions) {
    return StepBuilder(config, mode).build(step_index);
}

} // namespace ionmirror
