#pragma once

#include <cstdint>
#include <random>

namespace scripta {

/// Seeded generator with distributions written out explicitly, so a seed
/// produces the same stream on every standard library implementation
/// (std::uniform_*_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for the network identified by `net_id` within an ensemble.
/// Depends only on (master, net_id), never on training order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t net_id) noexcept {
    return mix64(mix64(master) ^ (net_id * 0xD6E8FEB86659FD93ULL + 1));
}

}  // namespace scripta
