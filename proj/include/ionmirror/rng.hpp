#pragma once

#include <cstdint>

namespace ionmirror {

// splitmix64 finalizer.  Used both to expand seeds and as the mixing
// function for deriving per-run streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// xoshiro256** seeded through splitmix64.  Chosen over the std engines
// because its output (and our uniform01 below) is bit-identical on every
// platform, which the reproducibility guarantees depend on.
class Prng {
public:
    explicit Prng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x = mix64(x);
            w = x;
        }
        // xoshiro must not start from the all-zero state
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0)
            s_[0] = 0x9e3779b97f4a7c15ull;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1) with the full 53-bit mantissa
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // independent child stream; advancing the child never touches the parent
    Prng split() { return Prng(mix64(next_u64() ^ 0x5851f42d4c957f2dull)); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

// Stable derivation of the per-trajectory seed from the master seed and the
// (distance index, run index) pair.  Two mixing rounds with distinct odd
// constants keep distinct index pairs on distinct streams; the layout is
// frozen so that sweep results are reproducible across versions.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                     std::uint64_t distance_index,
                                     std::uint64_t run_index) {
    std::uint64_t h = mix64(master_seed ^ (0x9e3779b97f4a7c15ull * (distance_index + 1)));
    h = mix64(h ^ (0xc2b2ae3d27d4eb4full * (run_index + 1)));
    return h;
}

} // namespace ionmirror
