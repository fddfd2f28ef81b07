#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionmirror {

using cplx = std::complex<double>;

// Dense complex square matrix, row major.  Gates in this project never
// exceed 8x8, so the storage stays a flat vector and every routine is a
// plain loop.
class GateMatrix {
public:
    GateMatrix() = default;

    explicit GateMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
        if (dim == 0)
            throw std::invalid_argument("GateMatrix: dimension must be positive");
    }

    static GateMatrix identity(std::size_t dim) {
        GateMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    const cplx* data() const { return a_.data(); }

    GateMatrix operator*(const GateMatrix& o) const {
        check_same_dim(o, "operator*");
        GateMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = 0; k < dim_; ++k) {
                const cplx v = (*this)(r, k);
                if (v == cplx{})
                    continue;
                for (std::size_t c = 0; c < dim_; ++c)
                    out(r, c) += v * o(k, c);
            }
        return out;
    }

    GateMatrix dagger() const {
        GateMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    GateMatrix& operator+=(const GateMatrix& o) {
        check_same_dim(o, "operator+=");
        for (std::size_t i = 0; i < a_.size(); ++i)
            a_[i] += o.a_[i];
        return *this;
    }

    GateMatrix& operator*=(cplx s) {
        for (auto& v : a_)
            v *= s;
        return *this;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_)
            m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_diff(const GateMatrix& o) const {
        check_same_dim(o, "max_abs_diff");
        double m = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i)
            m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

    // max entry of U^dag U - I; zero for an exact unitary
    double unitarity_defect() const {
        double m = 0.0;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) {
                cplx acc = 0.0;
                for (std::size_t k = 0; k < dim_; ++k)
                    acc += std::conj((*this)(k, r)) * (*this)(k, c);
                if (r == c)
                    acc -= 1.0;
                m = std::max(m, std::abs(acc));
            }
        return m;
    }

    bool is_unitary(double tol) const { return unitarity_defect() < tol; }

private:
    void check_same_dim(const GateMatrix& o, const char* who) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument(std::string("GateMatrix::") + who + ": dimension mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

// Matrix exponential by scaling and squaring around a Taylor core.  The
// argument is halved until its infinity norm is at most 1/2, the series is
// summed until terms fall below 1e-20 (30 terms max, far past double
// precision at that norm), and the result is squared back up.  Every gate
// built from a generator goes through this one path; closed forms live in
// the tests as oracles.
inline GateMatrix expm(const GateMatrix& a) {
    const std::size_t n = a.dim();
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < n; ++c)
            row += std::abs(a(r, c));
        norm = std::max(norm, row);
    }

    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    GateMatrix b = a;
    b *= scale;

    GateMatrix sum = GateMatrix::identity(n);
    GateMatrix term = GateMatrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = term * b;
        term *= cplx(1.0 / k, 0.0);
        sum += term;
        if (term.max_abs() < 1e-20)
            break;
    }

    for (int i = 0; i < squarings; ++i)
        sum = sum * sum;
    return sum;
}

// Frobenius distance between a and b minimised over a global phase:
//   min_phi || a - e^{i phi} b ||_F
// The minimising phase is the argument of tr(a^dag b); the distance is then
// summed entrywise at that phase.  (The textbook closed form
// sqrt(||a||^2 + ||b||^2 - 2 |tr(a^dag b)|) cancels catastrophically for
// near-identical matrices, leaving a noise floor around 1e-8; the residual
// sum is exact down to machine precision.)  The result upper-bounds the
// largest entry deviation, so tolerance checks against it are at least as
// strict as entrywise ones.
inline double distance_up_to_phase(const GateMatrix& a, const GateMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("distance_up_to_phase: dimension mismatch");
    cplx overlap = 0.0; // tr(a^dag b)
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            overlap += std::conj(a(r, c)) * b(r, c);
    const double mag = std::abs(overlap);
    const cplx phase = mag > 0.0 ? std::conj(overlap) / mag : cplx(1.0, 0.0);
    double d2 = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            d2 += std::norm(a(r, c) - phase * b(r, c));
    return std::sqrt(d2);
}

} // namespace ionmirror
