#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ionmirror {

// Least-squares fit of y = offset + amplitude * sin(2 pi x / wavelength + phase).
// amplitude >= 0 and phase in [0, 2 pi).  wavelength_defined is false when the
// data carry no oscillation to fit (constant input), in which case only
// offset and rms_residual are meaningful.
struct FitResult {
    double offset = 0.0;
    double amplitude = 0.0;
    double wavelength = 0.0;
    double phase = 0.0;
    double rms_residual = 0.0;
    bool wavelength_defined = false;
};

namespace detail {

// Solves the 3x3 system a*x = b in place, partial pivoting.
inline bool solve3(std::array<std::array<double, 3>, 3>& a, std::array<double, 3>& b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = b[col];
        for (int c = col + 1; c < 3; ++c)
            s -= a[col][c] * b[c];
        b[col] = s / a[col][col];
    }
    return true;
}

// Sum of squared residuals of the best linear model
// y = a + p sin(w x) + q cos(w x) for fixed angular frequency w.
// On success fills coef = {a, p, q}.
inline double sinusoid_sse(const std::vector<double>& xs, const std::vector<double>& ys,
                           double w, std::array<double, 3>& coef) {
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(w * xs[i]);
        const double c = std::cos(w * xs[i]);
        const std::array<double, 3> row{1.0, s, c};
        for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b)
                m[a][b] += row[a] * row[b];
            rhs[a] += row[a] * ys[i];
        }
    }
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];
    coef = rhs;
    std::array<std::array<double, 3>, 3> mc = m;
    if (!solve3(mc, coef))
        return std::numeric_limits<double>::infinity();
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = coef[0] + coef[1] * std::sin(w * xs[i]) + coef[2] * std::cos(w * xs[i]);
        sse += (ys[i] - fit) * (ys[i] - fit);
    }
    return sse;
}

} // namespace detail

// Fits a single sinusoid by scanning candidate wavelengths over
// [span/20, span], span being the x extent, then refining the best
// candidate with a golden-section search.  Needs at least 8 samples.
inline FitResult fit_sinusoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_sinusoid: size mismatch");
    if (xs.size() < 8)
        throw std::invalid_argument("fit_sinusoid: need at least 8 samples");
    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const double span = *xmax_it - *xmin_it;
    if (!(span > 0.0))
        throw std::invalid_argument("fit_sinusoid: x values are all equal");

    FitResult result;
    const std::size_t n = xs.size();
    double mean = 0.0;
    for (double y : ys)
        mean += y;
    mean /= static_cast<double>(n);
    double spread = 0.0;
    double scale = 1.0;
    for (double y : ys) {
        spread = std::max(spread, std::abs(y - mean));
        scale = std::max(scale, std::abs(y));
    }
    if (spread <= 1e-12 * scale) {
        // Constant data: the model degenerates to its offset term.
        result.offset = mean;
        double sse = 0.0;
        for (double y : ys)
            sse += (y - mean) * (y - mean);
        result.rms_residual = std::sqrt(sse / static_cast<double>(n));
        return result;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double lam_lo = span / 20.0;
    const double lam_hi = span;
    const double lam_step = 0.001 * span;

    auto sse_at = [&](double lam) {
        std::array<double, 3> coef{};
        return detail::sinusoid_sse(xs, ys, two_pi / lam, coef);
    };

    double best_lam = lam_lo;
    double best_sse = std::numeric_limits<double>::infinity();
    for (double lam = lam_lo; lam <= lam_hi + 0.5 * lam_step; lam += lam_step) {
        const double sse = sse_at(lam);
        if (sse < best_sse) {
            best_sse = sse;
            best_lam = lam;
        }
    }

    // Golden-section refinement inside the bracketing grid cells.
    double lo = std::max(lam_lo, best_lam - lam_step);
    double hi = std::min(lam_hi, best_lam + lam_step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = sse_at(c);
    double fd = sse_at(d);
    for (int it = 0; it < 120 && hi - lo > 1e-12 * span; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = sse_at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = sse_at(d);
        }
    }
    const double lam = 0.5 * (lo + hi);
    std::array<double, 3> coef{};
    const double sse = detail::sinusoid_sse(xs, ys, two_pi / lam, coef);

    result.offset = coef[0];
    result.amplitude = std::hypot(coef[1], coef[2]);
    result.wavelength = lam;
    result.phase = std::atan2(coef[2], coef[1]);
    if (result.phase < 0.0)
        result.phase += two_pi;
    result.rms_residual = std::sqrt(sse / static_cast<double>(n));
    result.wavelength_defined = true;
    return result;
}

// Pearson correlation coefficient of two equally long series.
inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: size mismatch");
    if (xs.size() < 3)
        throw std::invalid_argument("pearson: need at least 3 samples");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw std::invalid_argument("pearson: a series has zero variance");
    return sxy / std::sqrt(sxx * syy);
}

} // namespace ionmirror
