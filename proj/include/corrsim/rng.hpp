#pragma once

#include <cstdint>
#include <random>

// Deterministic randomness helpers. mt19937_64 is pinned by the C++ standard,
// splitmix64 is a fixed bit-mixing function, and bounded draws use rejection
// sampling instead of std::uniform_int_distribution (whose output is
// implementation-defined). Together these make seeded runs reproducible
// across platforms and standard libraries.

namespace corrsim::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for logical stream `stream` under master seed `seed`. Used to give
// every bootstrap replicate its own generator so results do not depend on
// thread count or scheduling.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) + stream);
}

// Uniform draw from [0, n), n >= 1, by rejection on the largest multiple.
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

}  // namespace corrsim::rng
