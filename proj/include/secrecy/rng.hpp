#ifndef SECRECY_RNG_HPP
#define SECRECY_RNG_HPP

// Portable seeded randomness.
//
// All draws come from std::mt19937_64, whose output sequence is fixed by the
// standard, and are converted to doubles here rather than through
// <random> distributions (whose algorithms are implementation-defined). The
// same (seed, stream) pair therefore yields the same draws on every platform.
//
// Sub-streams: stream k of a master seed is an independent engine seeded with
// splitmix64(seed ^ splitmix64(k + 1)). Channel i of a scenario always uses
// stream i, so adding or removing a channel never perturbs the others.

#include <cmath>
#include <cstdint>
#include <random>

namespace secrecy {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `index` derived from a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return seed ^ splitmix64(index + 1);
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent generator for sub-stream `index` of `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(stream_seed(seed, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given mean, by inversion.
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    /// Uniform integer in [0, n), n > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace secrecy

#endif
