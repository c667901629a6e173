#pragma once

#include <cstdint>
#include <random>

namespace glct {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent sub-seeds so that results
// do not depend on the order in which runs or retries are scheduled.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(master) ^ (index * 0xd1342543de82ef95ULL + 1));
}

// Uniform draw on [lo, hi). The mapping is spelled out instead of using
// std::uniform_real_distribution, whose output is implementation-defined.
inline double uniform(Rng& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace glct
