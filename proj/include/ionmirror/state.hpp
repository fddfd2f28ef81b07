#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionmirror/matrix.hpp"
#include "ionmirror/rng.hpp"

namespace ionmirror {

// Bit convention, shared by every module: qubit q occupies bit
// (num_qubits - 1 - q) of the amplitude index, so qubit 0 is the leftmost
// label of the ket |q0 q1 ... q_{n-1}> and the most significant index bit.
// Applying X to qubit 0 of |00> gives |10>, i.e. amplitude index 2.
//
// The same rule applies inside gate matrices: for a k-qubit gate,
// targets[0] is the most significant sub-index bit of the matrix.

class StateVector {
public:
    static constexpr int max_qubits = 24;
    static constexpr double unitarity_tol = 1e-9;
    static constexpr double degeneracy_tol = 1e-15;

    StateVector(int num_qubits, std::uint64_t basis_index = 0) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > max_qubits)
            throw std::invalid_argument("StateVector: qubit count must be in [1, 24]");
        const std::uint64_t d = std::uint64_t(1) << num_qubits;
        if (basis_index >= d)
            throw std::invalid_argument("StateVector: basis index out of range");
        amp_.assign(d, cplx{});
        amp_[basis_index] = 1.0;
    }

    // Arbitrary amplitude vector; the size must be a power of two and the
    // norm must already be within 1e-9 of one.
    explicit StateVector(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
        const std::size_t d = amp_.size();
        if (d < 2 || (d & (d - 1)) != 0)
            throw std::invalid_argument("StateVector: amplitude count must be a power of two");
        num_qubits_ = 0;
        for (std::size_t x = d; x > 1; x >>= 1)
            ++num_qubits_;
        if (num_qubits_ > max_qubits)
            throw std::invalid_argument("StateVector: qubit count must be in [1, 24]");
        if (std::abs(norm() - 1.0) > unitarity_tol)
            throw std::invalid_argument("StateVector: amplitudes are not normalised");
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    cplx amplitude(std::size_t index) const { return amp_.at(index); }

    std::uint64_t bit_mask(int qubit) const {
        check_qubit(qubit);
        return std::uint64_t(1) << (num_qubits_ - 1 - qubit);
    }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amp_)
            s += std::norm(a);
        return std::sqrt(s);
    }

    // Applies a unitary on up to three distinct target qubits.  The
    // unitarity check can be skipped for gates that were validated once at
    // circuit construction; target validation always runs.
    void apply_unitary(const GateMatrix& u, std::span<const int> targets, bool validate = true) {
        const int k = static_cast<int>(targets.size());
        if (k < 1 || k > 3)
            throw std::invalid_argument("apply_unitary: target count must be 1, 2 or 3");
        if (u.dim() != (std::size_t(1) << k))
            throw std::invalid_argument("apply_unitary: matrix dimension does not match target count");
        std::uint64_t bit[3];
        std::uint64_t tmask = 0;
        for (int j = 0; j < k; ++j) {
            bit[j] = bit_mask(targets[j]);
            if (tmask & bit[j])
                throw std::invalid_argument("apply_unitary: duplicate target qubit");
            tmask |= bit[j];
        }
        if (validate && !u.is_unitary(unitarity_tol))
            throw std::invalid_argument("apply_unitary: matrix is not unitary within 1e-9");

        const std::size_t block = std::size_t(1) << k;
        std::uint64_t off[8];
        for (std::size_t m = 0; m < block; ++m) {
            std::uint64_t o = 0;
            for (int j = 0; j < k; ++j)
                if (m & (std::uint64_t(1) << (k - 1 - j)))
                    o |= bit[j];
            off[m] = o;
        }

        const cplx* mat = u.data();
        cplx in[8], out[8];
        const std::uint64_t d = dim();
        for (std::uint64_t base = 0; base < d; ++base) {
            if (base & tmask)
                continue;
            for (std::size_t m = 0; m < block; ++m)
                in[m] = amp_[base | off[m]];
            for (std::size_t r = 0; r < block; ++r) {
                cplx acc = 0.0;
                const cplx* row = mat + r * block;
                for (std::size_t c = 0; c < block; ++c)
                    acc += row[c] * in[c];
                out[r] = acc;
            }
            for (std::size_t m = 0; m < block; ++m)
                amp_[base | off[m]] = out[m];
        }
    }

    void apply_unitary(const GateMatrix& u, std::initializer_list<int> targets, bool validate = true) {
        apply_unitary(u, std::span<const int>(targets.begin(), targets.size()), validate);
    }

    // Exact amplitude exchange; used for SWAP gates so the field shift
    // stays a bit-for-bit permutation.
    void swap_qubits(int a, int b) {
        const std::uint64_t ma = bit_mask(a);
        const std::uint64_t mb = bit_mask(b);
        if (ma == mb)
            throw std::invalid_argument("swap_qubits: duplicate target qubit");
        const std::uint64_t d = dim();
        for (std::uint64_t i = 0; i < d; ++i)
            if ((i & ma) && !(i & mb))
                std::swap(amp_[i], amp_[i ^ ma ^ mb]);
    }

    // Probability of finding the qubit in |1>, no collapse.
    double excited_population(int qubit) const {
        const std::uint64_t m = bit_mask(qubit);
        double p = 0.0;
        for (std::uint64_t i = 0; i < dim(); ++i)
            if (i & m)
                p += std::norm(amp_[i]);
        return p;
    }

    // Projective measurement in the computational basis.  Consumes exactly
    // one uniform draw: outcome 1 iff u < P(1).
    int measure_qubit(int qubit, Prng& rng) { return collapse_qubit(qubit, rng.uniform01()); }

    // Collapse for a given draw u in [0, 1).  The post-measurement state is
    // renormalised; collapsing onto a branch of probability below 1e-15 is
    // reported as a degeneracy error.
    int collapse_qubit(int qubit, double u) {
        const std::uint64_t m = bit_mask(qubit);
        const double p1 = excited_population(qubit);
        const int outcome = u < p1 ? 1 : 0;
        const double p = outcome ? p1 : 1.0 - p1;
        if (p < degeneracy_tol)
            throw std::runtime_error("measure_qubit: collapse onto a branch of probability < 1e-15");
        const double inv = 1.0 / std::sqrt(p);
        for (std::uint64_t i = 0; i < dim(); ++i) {
            if (((i & m) != 0) == (outcome != 0))
                amp_[i] *= inv;
            else
                amp_[i] = cplx{};
        }
        return outcome;
    }

    // Measure, then flip back to |0> when the qubit came out in |1>.
    // Returns the pre-reset outcome.
    int reset_qubit(int qubit, Prng& rng) {
        const int outcome = measure_qubit(qubit, rng);
        if (outcome) {
            const std::uint64_t m = bit_mask(qubit);
            for (std::uint64_t i = 0; i < dim(); ++i)
                if (i & m)
                    std::swap(amp_[i], amp_[i ^ m]);
        }
        return outcome;
    }

private:
    void check_qubit(int qubit) const {
        if (qubit < 0 || qubit >= num_qubits_)
            throw std::invalid_argument("qubit index out of range: " + std::to_string(qubit));
    }

    int num_qubits_ = 0;
    std::vector<cplx> amp_;
};

// Fixed-width classical bit store.  Every measurement writes exactly one
// bit; trajectory-level logs append per step outside of this class.
class ClassicalRegister {
public:
    explicit ClassicalRegister(int width) : bits_(checked_width(width), 0) {}

    int width() const { return static_cast<int>(bits_.size()); }

    std::uint8_t get(int i) const { return bits_.at(static_cast<std::size_t>(i)); }
    void set(int i, std::uint8_t v) { bits_.at(static_cast<std::size_t>(i)) = v ? 1 : 0; }

private:
    static std::size_t checked_width(int width) {
        if (width < 0)
            throw std::invalid_argument("ClassicalRegister: negative width");
        return static_cast<std::size_t>(width);
    }

    std::vector<std::uint8_t> bits_;
};

} // namespace ionmirror
