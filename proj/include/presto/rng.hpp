#pragma once

#include <cstdint>

namespace presto {

// SplitMix64. Chosen over std::mt19937_64 because the whole state is one
// word, seeding is trivial, and the output sequence is identical on every
// platform, which the deterministic parallel estimator relies on.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Full avalanche of one word; also usable as a standalone hash.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Random stream for one estimator iteration, keyed by (seed, iteration).
// Iteration i always sees the same draws no matter which worker runs it or
// in which order iterations are claimed; that makes parallel runs replayable.
class IterationRng {
  public:
    IterationRng(std::uint64_t seed, std::uint64_t iteration)
        : gen_(SplitMix64::mix(seed ^ SplitMix64::mix(iteration + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return gen_.next(); }

    // Uniform on [lo, hi]. 53-bit resolution; u < 1 strictly, though rounding
    // of lo + u*(hi-lo) can land on hi itself. Endpoints carry measure zero,
    // so callers drawing from a continuous interval never care.
    double uniform_real(double lo, double hi) {
        const double u = static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform on {0, ..., n-1}, unbiased (Lemire's multiply-shift with
    // rejection). Precondition: n > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        std::uint64_t x = gen_.next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lowbits = static_cast<std::uint64_t>(m);
        if (lowbits < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lowbits < threshold) {
                x = gen_.next();
                m = static_cast<__uint128_t>(x) * n;
                lowbits = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    SplitMix64 gen_;
};

}  // namespace presto
