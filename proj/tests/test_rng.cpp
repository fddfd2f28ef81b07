#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ionmirror/rng.hpp"

using namespace ionmirror;

TEST_CASE("generator output is frozen") {
    // Golden values.  These pin the exact bit stream; any change here breaks
    // reproducibility of archived sweep results and must be treated as a
    // breaking change.
    Prng p(12345);
    CHECK(p.next_u64() == 0x2cf2db729a2209daULL);
    CHECK(p.next_u64() == 0xd65cf80b902ac89fULL);
    CHECK(p.next_u64() == 0x8aec86410d6d1626ULL);
    CHECK(p.next_u64() == 0x6255ec3d560639fbULL);

    Prng q(12345);
    CHECK(q.uniform01() == 0.17558070705320727);
    CHECK(q.uniform01() == 0.8373560932379106);
}

TEST_CASE("same seed gives the same stream, different seeds differ") {
    Prng a(77), b(77), c(78);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("seed zero does not collapse to the degenerate state") {
    Prng z(0);
    std::uint64_t acc = 0;
    for (int i = 0; i < 8; ++i)
        acc |= z.next_u64();
    CHECK(acc != 0);
}

TEST_CASE("uniform01 stays in [0, 1) and is roughly uniform") {
    Prng p(2024);
    const int n = 100000;
    double sum = 0.0;
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = p.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    // mean of n uniforms: sigma = 1/sqrt(12 n) ~ 9.1e-4; allow 4 sigma
    CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("split yields an independent child stream") {
    // Splitting consumes exactly one parent draw and nothing the child does
    // afterwards affects the parent.
    Prng parent(5);
    for (int i = 0; i < 3; ++i)
        parent.next_u64();
    Prng child = parent.split();
    for (int i = 0; i < 10; ++i)
        child.next_u64();

    Prng mirror(5);
    for (int i = 0; i < 3; ++i)
        mirror.next_u64();
    mirror.next_u64(); // the draw split() consumed

    for (int i = 0; i < 16; ++i)
        CHECK(parent.next_u64() == mirror.next_u64());
}

TEST_CASE("run seed derivation is frozen and collision-free on small grids") {
    CHECK(derive_run_seed(1, 0, 0) == 0xead3e05912a2f259ULL);
    CHECK(derive_run_seed(1, 2, 3) == 0x31d3777e0efed02eULL);
    CHECK(derive_run_seed(42, 7, 11) == 0x108eb08019290ae7ULL);

    std::set<std::uint64_t> seen;
    for (std::uint64_t d = 0; d < 64; ++d)
        for (std::uint64_t r = 0; r < 128; ++r)
            seen.insert(derive_run_seed(1, d, r));
    CHECK(seen.size() == 64 * 128);

    // index pairs must not alias across the (distance, run) axes
    CHECK(derive_run_seed(1, 0, 1) != derive_run_seed(1, 1, 0));
    CHECK(derive_run_seed(1, 0, 0) != derive_run_seed(2, 0, 0));
}
