#pragma once

#include <cstdint>

#include "biomon/stats.hpp"

namespace biomon::rng {

// SplitMix64 (Steele, Lea & Flood 2014; Vigna's reference constants).
// The uniform stream is bit-exact for a given seed, which every simgen
// generator and seeded test relies on; the constants are repeated in the
// README so other implementations can reproduce the streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1): the top 53 bits, offset by half an
    // ulp so the inverse normal CDF never sees 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via the inverse CDF of the uniform draw.
    double next_gaussian() { return stats::normal_quantile(next_uniform()); }

private:
    std::uint64_t state_;
};

}  // namespace biomon::rng
