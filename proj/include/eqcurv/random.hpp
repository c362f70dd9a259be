#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace eqcurv {

// Bit-level conversions so seeded runs replay identically across standard libraries
// (the <random> distributions are implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [lo, hi]; the modulo bias is negligible for small ranges.
inline std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

/// Exp(1) by inversion.
inline double exponential(std::mt19937_64& rng) {
    return -std::log1p(-uniform01(rng));
}

}  // namespace eqcurv
