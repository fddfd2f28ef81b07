#pragma once

#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ionmirror/gates.hpp"
#include "ionmirror/matrix.hpp"
#include "ionmirror/rng.hpp"
#include "ionmirror/state.hpp"

namespace ionmirror {

enum class OpKind { Unitary, Measure, ClassicallyControlled, Reset };

// One circuit operation.  Matrices are shared immutable payloads so that
// per-step circuits can be assembled cheaply from cached gates.
struct GateOp {
    OpKind kind = OpKind::Unitary;
    std::array<int, 3> targets{-1, -1, -1};
    int num_targets = 0;
    std::shared_ptr<const GateMatrix> matrix; // Unitary, ClassicallyControlled
    int classical_bit = -1;                   // Measure: destination, CC: condition
    std::string label;
    bool is_swap = false;

    std::span<const int> target_span() const {
        return std::span<const int>(targets.data(), static_cast<std::size_t>(num_targets));
    }
};

struct GateCensus {
    int single_qubit = 0;
    int two_qubit = 0;
    int three_qubit = 0;
    int measurements = 0;
    int resets = 0;

    bool operator==(const GateCensus&) const = default;
};

// Called right before each op executes; lets a driver sample observables
// (ion population ahead of the detector measurement) without the circuit
// knowing about experiment bookkeeping.
class ExecutionObserver {
public:
    virtual ~ExecutionObserver() = default;
    virtual void before_op(std::size_t op_index, const GateOp& op, const StateVector& state) = 0;
};

// Ordered op list over a fixed qubit count and classical width.  All
// validation happens when ops are added, so execute() can apply matrices
// without re-checking unitarity.  Circuits are immutable once built (the
// builder pattern here is add-only) and safe to share across threads.
class Circuit {
public:
    Circuit(int num_qubits, int classical_width)
        : num_qubits_(num_qubits), classical_width_(classical_width) {
        if (num_qubits < 1 || num_qubits > StateVector::max_qubits)
            throw std::invalid_argument("Circuit: qubit count must be in [1, 24]");
        if (classical_width < 0)
            throw std::invalid_argument("Circuit: negative classical width");
    }

    int num_qubits() const { return num_qubits_; }
    int classical_width() const { return classical_width_; }
    const std::vector<GateOp>& ops() const { return ops_; }

    void add_unitary(std::shared_ptr<const GateMatrix> matrix, std::span<const int> targets,
                     std::string label = {}) {
        GateOp op;
        op.kind = OpKind::Unitary;
        fill_targets(op, targets);
        validate_matrix(*matrix, op.num_targets);
        op.is_swap = op.num_targets == 2 && matrix->max_abs_diff(swap_gate()) == 0.0;
        op.matrix = std::move(matrix);
        op.label = std::move(label);
        ops_.push_back(std::move(op));
    }

    void add_unitary(const GateMatrix& matrix, std::initializer_list<int> targets,
                     std::string label = {}) {
        add_unitary(std::make_shared<const GateMatrix>(matrix),
                    std::span<const int>(targets.begin(), targets.size()), std::move(label));
    }

    void add_measure(int qubit, int classical_bit) {
        GateOp op;
        op.kind = OpKind::Measure;
        const int t[1] = {qubit};
        fill_targets(op, t);
        check_bit(classical_bit);
        op.classical_bit = classical_bit;
        op.label = "measure";
        ops_.push_back(std::move(op));
    }

    void add_classically_controlled(std::shared_ptr<const GateMatrix> matrix,
                                    std::span<const int> targets, int classical_bit,
                                    std::string label = {}) {
        GateOp op;
        op.kind = OpKind::ClassicallyControlled;
        fill_targets(op, targets);
        validate_matrix(*matrix, op.num_targets);
        check_bit(classical_bit);
        op.classical_bit = classical_bit;
        op.matrix = std::move(matrix);
        op.label = std::move(label);
        ops_.push_back(std::move(op));
    }

    void add_classically_controlled(const GateMatrix& matrix, std::initializer_list<int> targets,
                                    int classical_bit, std::string label = {}) {
        add_classically_controlled(std::make_shared<const GateMatrix>(matrix),
                                   std::span<const int>(targets.begin(), targets.size()),
                                   classical_bit, std::move(label));
    }

    void add_reset(int qubit) {
        GateOp op;
        op.kind = OpKind::Reset;
        const int t[1] = {qubit};
        fill_targets(op, t);
        op.label = "reset";
        ops_.push_back(std::move(op));
    }

    // Runs the op list.  State and register compatibility is checked before
    // anything mutates.
    void execute(StateVector& state, ClassicalRegister& creg, Prng& rng,
                 ExecutionObserver* observer = nullptr) const {
        if (state.num_qubits() != num_qubits_)
            throw std::invalid_argument("Circuit::execute: state qubit count mismatch");
        if (creg.width() != classical_width_)
            throw std::invalid_argument("Circuit::execute: classical width mismatch");
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            const GateOp& op = ops_[i];
            if (observer)
                observer->before_op(i, op, state);
            switch (op.kind) {
            case OpKind::Unitary:
                if (op.is_swap)
                    state.swap_qubits(op.targets[0], op.targets[1]);
                else
                    state.apply_unitary(*op.matrix, op.target_span(), false);
                break;
            case OpKind::Measure:
                creg.set(op.classical_bit, static_cast<std::uint8_t>(state.measure_qubit(op.targets[0], rng)));
                break;
            case OpKind::ClassicallyControlled:
                if (creg.get(op.classical_bit))
                    state.apply_unitary(*op.matrix, op.target_span(), false);
                break;
            case OpKind::Reset:
                state.reset_qubit(op.targets[0], rng);
                break;
            }
        }
    }

    // One op per line: label, targets, classical wiring.
    void dump(std::ostream& os) const {
        for (const auto& op : ops_) {
            os << (op.label.empty() ? kind_name(op.kind) : op.label);
            for (int j = 0; j < op.num_targets; ++j)
                os << " q" << op.targets[j];
            if (op.kind == OpKind::Measure)
                os << " -> c" << op.classical_bit;
            if (op.kind == OpKind::ClassicallyControlled)
                os << " if c" << op.classical_bit;
            os << '\n';
        }
    }

private:
    static const char* kind_name(OpKind k) {
        switch (k) {
        case OpKind::Unitary: return "unitary";
        case OpKind::Measure: return "measure";
        case OpKind::ClassicallyControlled: return "conditional";
        case OpKind::Reset: return "reset";
        }
        return "?";
    }

    void fill_targets(GateOp& op, std::span<const int> targets) {
        if (targets.empty() || targets.size() > 3)
            throw std::invalid_argument("Circuit: op target count must be 1, 2 or 3");
        op.num_targets = static_cast<int>(targets.size());
        for (std::size_t j = 0; j < targets.size(); ++j) {
            const int q = targets[j];
            if (q < 0 || q >= num_qubits_)
                throw std::invalid_argument("Circuit: target qubit out of range");
            for (std::size_t k = 0; k < j; ++k)
                if (op.targets[k] == q)
                    throw std::invalid_argument("Circuit: duplicate target qubit");
            op.targets[j] = q;
        }
    }

    void validate_matrix(const GateMatrix& m, int num_targets) const {
        if (m.dim() != (std::size_t(1) << num_targets))
            throw std::invalid_argument("Circuit: matrix dimension does not match target count");
        if (!m.is_unitary(StateVector::unitarity_tol))
            throw std::invalid_argument("Circuit: matrix is not unitary within 1e-9");
    }

    void check_bit(int bit) const {
        if (bit < 0 || bit >= classical_width_)
            throw std::invalid_argument("Circuit: classical bit out of range");
    }

    int num_qubits_;
    int classical_width_;
    std::vector<GateOp> ops_;
};

// Gate counts by arity.  Unitary and classically controlled ops land in the
// arity buckets (SWAPs and controlled rotations are two-qubit ops), Measure
// ops in measurements, Reset ops in resets.
inline GateCensus gate_census(const Circuit& c) {
    GateCensus census;
    for (const auto& op : c.ops()) {
        switch (op.kind) {
        case OpKind::Unitary:
        case OpKind::ClassicallyControlled:
            if (op.num_targets == 1)
                ++census.single_qubit;
            else if (op.num_targets == 2)
                ++census.two_qubit;
            else
                ++census.three_qubit;
            break;
        case OpKind::Measure:
            ++census.measurements;
            break;
        case OpKind::Reset:
            ++census.resets;
            break;
        }
    }
    return census;
}

} // namespace ionmirror
