#pragma once

#include <cstdint>
#include <cmath>

namespace codep {

// Counter-derived random streams: stream (seed, index) is a self-contained
// generator, so any subset of trajectories reproduces identically no matter
// how work is scheduled. splitmix64 state advance with a strong mixer.
namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

// A 64-bit sub-seed for stream `index` of a master seed (used for mixture
// components and trajectory streams).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = detail::splitmix64_next(s);
    s = a ^ (index * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL);
    return detail::splitmix64_next(s);
}

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t index) : state_(derive_seed(seed, index)) {}

    std::uint64_t next_u64() { return detail::splitmix64_next(state_); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; no cached second value, so draw order
    // is position-independent.
    double gaussian() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace codep
