#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ionmirror/gates.hpp"
#include "ionmirror/rng.hpp"
#include "ionmirror/state.hpp"

using namespace ionmirror;

namespace {

GateMatrix random_unitary(std::size_t dim, Prng& rng) {
    // exp of a random anti-Hermitian matrix (imaginary diagonal)
    GateMatrix g(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        g(r, r) = cplx(0.0, rng.uniform01() - 0.5);
        for (std::size_t c = r + 1; c < dim; ++c) {
            const cplx v(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
            g(r, c) = v;
            g(c, r) = -std::conj(v);
        }
    }
    return expm(g);
}

std::vector<cplx> random_state(int qubits, Prng& rng) {
    std::vector<cplx> amp(std::size_t(1) << qubits);
    double n2 = 0.0;
    for (auto& a : amp) {
        a = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amp)
        a *= inv;
    return amp;
}

} // namespace

TEST_CASE("construction validates its inputs") {
    CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(25), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(2, 4), std::invalid_argument);

    CHECK_THROWS_AS(StateVector(std::vector<cplx>{1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(std::vector<cplx>{0.5, 0.5}), std::invalid_argument); // norm != 1

    const StateVector sv(3, 5);
    CHECK(sv.num_qubits() == 3);
    CHECK(sv.dim() == 8);
    CHECK(sv.amplitude(5) == cplx(1.0, 0.0));
    CHECK(sv.norm() == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("qubit 0 is the most significant index bit") {
    // X on qubit 0 of |00> must give |10>, i.e. amplitude index 2.
    StateVector sv(2, 0);
    sv.apply_unitary(pauli_x(), {0});
    CHECK(sv.amplitude(2) == cplx(1.0, 0.0));

    StateVector sw(2, 0);
    sw.apply_unitary(pauli_x(), {1});
    CHECK(sw.amplitude(1) == cplx(1.0, 0.0));
}

TEST_CASE("two-qubit gate application matches the dense kron oracle") {
    // On a 2-qubit register, applying u on (0, 1) must equal the plain
    // matrix-vector product; applying on (1, 0) must equal the product with
    // the row/column sub-indices swapped.
    Prng rng(11);
    const GateMatrix u = random_unitary(4, rng);
    const std::vector<cplx> amp = random_state(2, rng);

    StateVector fwd(amp);
    fwd.apply_unitary(u, {0, 1});
    for (std::size_t r = 0; r < 4; ++r) {
        cplx expect = 0.0;
        for (std::size_t c = 0; c < 4; ++c)
            expect += u(r, c) * amp[c];
        CHECK(std::abs(fwd.amplitude(r) - expect) < 1e-13);
    }

    auto flip = [](std::size_t i) { return ((i & 1) << 1) | (i >> 1); };
    StateVector rev(amp);
    rev.apply_unitary(u, {1, 0});
    for (std::size_t r = 0; r < 4; ++r) {
        cplx expect = 0.0;
        for (std::size_t c = 0; c < 4; ++c)
            expect += u(flip(r), flip(c)) * amp[c];
        CHECK(std::abs(rev.amplitude(r) - expect) < 1e-13);
    }
}

TEST_CASE("gate application is linear and composes") {
    Prng rng(13);
    const GateMatrix u = random_unitary(4, rng);
    const GateMatrix v = random_unitary(4, rng);

    // (v u) applied at once equals u then v on a 4-qubit register
    const std::vector<cplx> amp = random_state(4, rng);
    StateVector stepwise(amp);
    stepwise.apply_unitary(u, {1, 3});
    stepwise.apply_unitary(v, {1, 3});
    StateVector fused(amp);
    fused.apply_unitary(v * u, {1, 3});
    for (std::size_t i = 0; i < stepwise.dim(); ++i)
        CHECK(std::abs(stepwise.amplitude(i) - fused.amplitude(i)) < 1e-12);

    // unitarity: apply u then its dagger and recover the input
    StateVector round(amp);
    round.apply_unitary(u, {0, 2});
    round.apply_unitary(u.dagger(), {0, 2});
    for (std::size_t i = 0; i < round.dim(); ++i)
        CHECK(std::abs(round.amplitude(i) - amp[i]) < 1e-12);
}

TEST_CASE("three-qubit gates act on the selected targets only") {
    Prng rng(17);
    const GateMatrix u = random_unitary(8, rng);
    const std::vector<cplx> amp = random_state(5, rng);

    StateVector sv(amp);
    sv.apply_unitary(u, {4, 0, 2});
    CHECK(std::abs(sv.norm() - 1.0) < 1e-12);

    // a spectator qubit's reduced population is untouched
    StateVector ref(amp);
    CHECK(sv.excited_population(1) == Catch::Approx(ref.excited_population(1)).margin(1e-12));
    CHECK(sv.excited_population(3) == Catch::Approx(ref.excited_population(3)).margin(1e-12));
}

TEST_CASE("apply_unitary validates targets and matrices") {
    StateVector sv(3, 0);
    CHECK_THROWS_AS(sv.apply_unitary(pauli_x(), {3}), std::invalid_argument);
    CHECK_THROWS_AS(sv.apply_unitary(pauli_x(), {-1}), std::invalid_argument);
    CHECK_THROWS_AS(sv.apply_unitary(cnot(), {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(sv.apply_unitary(cnot(), {1}), std::invalid_argument);

    GateMatrix not_unitary(2);
    not_unitary(0, 0) = 1.0;
    not_unitary(1, 1) = 2.0;
    CHECK_THROWS_AS(sv.apply_unitary(not_unitary, {0}), std::invalid_argument);
    // the validate flag skips only the unitarity check
    CHECK_NOTHROW(sv.apply_unitary(not_unitary, {0}, false));
}

TEST_CASE("swap_qubits exchanges amplitudes exactly") {
    Prng rng(19);
    const std::vector<cplx> amp = random_state(4, rng);
    StateVector direct(amp);
    direct.swap_qubits(1, 3);
    StateVector viagate(amp);
    viagate.apply_unitary(swap_gate(), {1, 3});
    for (std::size_t i = 0; i < direct.dim(); ++i)
        CHECK(direct.amplitude(i) == viagate.amplitude(i));
    CHECK_THROWS_AS(direct.swap_qubits(2, 2), std::invalid_argument);
}

TEST_CASE("measurement statistics match the Born rule") {
    const double p1 = 0.7;
    const int trials = 100000;
    Prng rng(101);
    int ones = 0;
    for (int t = 0; t < trials; ++t) {
        StateVector sv(std::vector<cplx>{std::sqrt(1.0 - p1), std::sqrt(p1)});
        ones += sv.measure_qubit(0, rng);
    }
    const double sigma = std::sqrt(p1 * (1.0 - p1) / trials);
    CHECK(std::abs(double(ones) / trials - p1) < 4.0 * sigma);
}

TEST_CASE("measurement collapses and renormalises") {
    Prng rng(23);
    StateVector sv(random_state(3, rng));
    const int outcome = sv.measure_qubit(1, rng);
    CHECK(sv.excited_population(1) == Catch::Approx(outcome).margin(1e-12));
    CHECK(std::abs(sv.norm() - 1.0) < 1e-12);

    // measuring again is deterministic and cannot change the state
    const std::vector<cplx> before = sv.amplitudes();
    CHECK(sv.measure_qubit(1, rng) == outcome);
    for (std::size_t i = 0; i < sv.dim(); ++i)
        CHECK(std::abs(sv.amplitude(i) - before[i]) < 1e-15);
}

TEST_CASE("deterministic outcomes hold at the probability edges") {
    StateVector zero(2, 0);
    Prng rng(3);
    CHECK(zero.measure_qubit(0, rng) == 0);

    StateVector one(2, 3);
    CHECK(one.measure_qubit(1, rng) == 1);
}

TEST_CASE("collapse onto a vanishing branch is a degeneracy error") {
    const double eps = 1e-9; // P(0) = 1e-18, far below the 1e-15 floor
    std::vector<cplx> amp{eps, std::sqrt(1.0 - eps * eps)};
    StateVector sv(amp);
    CHECK_THROWS_AS(sv.collapse_qubit(0, 1.0 - 1e-22), std::runtime_error);
}

TEST_CASE("reset returns the prior outcome and leaves vacuum") {
    Prng rng(29);
    for (int t = 0; t < 50; ++t) {
        StateVector sv(random_state(3, rng));
        const double p1 = sv.excited_population(2);
        const int outcome = sv.reset_qubit(2, rng);
        CHECK((outcome == 0 || outcome == 1));
        CHECK(sv.excited_population(2) == 0.0);
        CHECK(std::abs(sv.norm() - 1.0) < 1e-12);
        (void)p1;
    }
}

TEST_CASE("excited_population does not disturb the state") {
    Prng rng(31);
    const std::vector<cplx> amp = random_state(3, rng);
    StateVector sv(amp);
    double total = 0.0;
    for (int q = 0; q < 3; ++q)
        total += sv.excited_population(q);
    (void)total;
    for (std::size_t i = 0; i < sv.dim(); ++i)
        CHECK(sv.amplitude(i) == amp[i]);
}

TEST_CASE("classical register stores bits of fixed width") {
    ClassicalRegister creg(3);
    CHECK(creg.width() == 3);
    CHECK(creg.get(0) == 0);
    creg.set(1, 1);
    creg.set(2, 7); // any nonzero clamps to 1
    CHECK(creg.get(1) == 1);
    CHECK(creg.get(2) == 1);
    creg.set(1, 0);
    CHECK(creg.get(1) == 0);
    CHECK_THROWS_AS(creg.get(3), std::out_of_range);
    CHECK_THROWS_AS(ClassicalRegister(-1), std::invalid_argument);
}
