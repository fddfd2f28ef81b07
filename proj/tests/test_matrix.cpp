#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ionmirror/matrix.hpp"
#include "ionmirror/rng.hpp"

using namespace ionmirror;

namespace {

// Independent exponential oracle: plain Taylor series, valid only for small
// norms where it converges fast.  Deliberately shares no code with expm.
GateMatrix taylor_exp(const GateMatrix& a, int terms = 40) {
    GateMatrix sum = GateMatrix::identity(a.dim());
    GateMatrix term = GateMatrix::identity(a.dim());
    for (int k = 1; k <= terms; ++k) {
        term = term * a;
        term *= cplx(1.0 / k, 0.0);
        sum += term;
    }
    return sum;
}

GateMatrix random_matrix(std::size_t dim, Prng& rng, double scale) {
    GateMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5) * scale;
    return m;
}

} // namespace

TEST_CASE("identity and multiplication behave like matrices") {
    const GateMatrix id = GateMatrix::identity(4);
    Prng rng(7);
    const GateMatrix m = random_matrix(4, rng, 1.0);
    CHECK((id * m).max_abs_diff(m) == 0.0);
    CHECK((m * id).max_abs_diff(m) == 0.0);

    // associativity on random matrices
    const GateMatrix a = random_matrix(4, rng, 1.0);
    const GateMatrix b = random_matrix(4, rng, 1.0);
    CHECK(((m * a) * b).max_abs_diff(m * (a * b)) < 1e-13);
}

TEST_CASE("dagger conjugate-transposes") {
    GateMatrix m(2);
    m(0, 1) = cplx(1.0, 2.0);
    const GateMatrix d = m.dagger();
    CHECK(d(1, 0) == cplx(1.0, -2.0));
    CHECK(d(0, 1) == cplx(0.0, 0.0));
}

TEST_CASE("unitarity defect separates unitaries from the rest") {
    GateMatrix h(2);
    const double r = 1.0 / std::sqrt(2.0);
    h(0, 0) = r; h(0, 1) = r; h(1, 0) = r; h(1, 1) = -r;
    CHECK(h.unitarity_defect() < 1e-15);
    CHECK(h.is_unitary(1e-9));

    GateMatrix bad = h;
    bad(0, 0) = r + 1e-3;
    CHECK_FALSE(bad.is_unitary(1e-9));
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(GateMatrix(0), std::invalid_argument);
    GateMatrix a(2), b(4);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a.max_abs_diff(b), std::invalid_argument);
    CHECK_THROWS_AS(distance_up_to_phase(a, b), std::invalid_argument);
}

TEST_CASE("expm matches an independent Taylor oracle on small norms") {
    Prng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + 2 * (trial % 2); // 2 or 4
        const GateMatrix a = random_matrix(dim, rng, 0.25);
        CHECK(expm(a).max_abs_diff(taylor_exp(a)) < 1e-13);
    }
}

TEST_CASE("expm handles norms that require scaling and squaring") {
    // exp of a large anti-Hermitian generator stays unitary and matches the
    // closed-form rotation exp(t(|1><0| - |0><1|)) = [[cos t, -sin t], [sin t, cos t]].
    for (double t : {0.3, 1.7, 8.0, 25.0}) {
        GateMatrix gen(2);
        gen(0, 1) = -t;
        gen(1, 0) = t;
        const GateMatrix u = expm(gen);
        CHECK(u.unitarity_defect() < 1e-12);
        GateMatrix ref(2);
        ref(0, 0) = std::cos(t);
        ref(0, 1) = -std::sin(t);
        ref(1, 0) = std::sin(t);
        ref(1, 1) = std::cos(t);
        CHECK(u.max_abs_diff(ref) < 1e-12);
    }
}

TEST_CASE("expm of a diagonal matrix exponentiates the diagonal") {
    GateMatrix d(3);
    d(0, 0) = cplx(0.0, 1.25);
    d(1, 1) = cplx(0.0, -2.5);
    d(2, 2) = cplx(-0.5, 0.75);
    const GateMatrix e = expm(d);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            if (r == c)
                CHECK(std::abs(e(r, c) - std::exp(d(r, c))) < 1e-14);
            else
                CHECK(std::abs(e(r, c)) < 1e-14);
        }
}

TEST_CASE("expm(A) expm(-A) is the identity") {
    Prng rng(9);
    const GateMatrix a = random_matrix(4, rng, 2.0);
    GateMatrix na = a;
    na *= -1.0;
    CHECK((expm(a) * expm(na)).max_abs_diff(GateMatrix::identity(4)) < 1e-12);
}

TEST_CASE("phase-minimised distance has the documented fixed points") {
    GateMatrix x(2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const GateMatrix id = GateMatrix::identity(2);

    // tr(X^dag I) = 0, so no phase helps: sqrt(2 + 2) = 2
    CHECK(distance_up_to_phase(x, id) == Catch::Approx(2.0).margin(1e-14));
    CHECK(distance_up_to_phase(x, x) < 1e-14);

    // a pure global phase is invisible
    GateMatrix xp = x;
    xp *= std::polar(1.0, 1.234);
    CHECK(distance_up_to_phase(x, xp) < 1e-7);
    CHECK(x.max_abs_diff(xp) > 0.5); // while the plain distance is large
}
