#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hypcone {

// Deterministic PRNG used everywhere randomness is needed. We avoid
// std::uniform_*_distribution on purpose: their outputs differ across
// standard library implementations, and reports must be byte-identical
// for a fixed seed regardless of toolchain or thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so that small seeds do not produce correlated streams.
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        // splitmix64: tiny, fast, passes BigCrush, trivially portable.
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller (caches the paired value).
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Independent substream for a named task. Streams derived from the same
/// master seed but different labels (or indices) are uncorrelated, so
/// parallel work can draw from per-chunk streams without any ordering
/// dependence on the thread schedule.
inline Rng rng_stream(std::uint64_t master_seed, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t mix = master_seed ^ fnv1a(label);
    mix += 0x9e3779b97f4a7c15ULL * (index + 1);
    return Rng(mix);
}

}  // namespace hypcone
