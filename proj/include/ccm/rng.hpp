#pragma once
// Deterministic, splittable RNG. Every generated entity derives its stream
// from (master seed, entity kind, index), so populations are reproducible
// independent of evaluation order (including OpenMP sweeps). splitmix64 core;
// no std::*_distribution anywhere (those are implementation-defined).

#include <cstdint>

namespace ccm {

enum class StreamKind : std::uint64_t {
    provider = 1,
    job = 2,
    instance = 3,
    trial = 4,
    race = 5,
    curve = 6,
    misc = 7,
};

struct Rng {
    std::uint64_t state{0x9e3779b97f4a7c15ull};

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi] inclusive; hi >= lo
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // uniform in [0, 1)
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool coin(double p) { return uniform_real() < p; }
};

// Derives an independent stream for (seed, kind, index).
Rng derive_stream(std::uint64_t seed, StreamKind kind, std::uint64_t index);

}  // namespace ccm
