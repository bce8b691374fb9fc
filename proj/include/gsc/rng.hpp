#pragma once

#include <cmath>
#include <cstdint>

namespace gsc {

/// Splittable deterministic PRNG (splitmix64 core).
///
/// Every random choice in the library flows from one of these, seeded from a
/// single 64-bit value. Substreams are derived from the construction seed
/// only, never from the draw state, so parallel workers can split their own
/// generators without the execution order changing any result. Gaussian
/// variates use Box-Muller on top of the raw stream, which keeps outputs
/// identical across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(mix(seed ^ kGamma)) {}

    /// Derives an independent stream identified by `stream`.
    Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ + kGamma * (stream + 1)));
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal variate.
    double next_gaussian() {
        double u1 = next_double();
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr double kTwoPi = 6.283185307179586476925286766559;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

/// One-shot seed derivation for handing sub-seeds to components.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return Rng(master).split(stream).next_u64();
}

}  // namespace gsc
