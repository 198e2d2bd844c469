#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace phasemc {

/// Counter-based random stream: every draw is addressed by (seed, stream, index)
/// instead of mutating shared state. Any worker can evaluate any particle's
/// draws, so parallel runs reproduce the serial sample set bit for bit.
///
/// The mixing function is SplitMix64 (Steele et al.), applied to the packed
/// counter. Statistical quality is more than adequate for Monte Carlo
/// sampling of smooth distributions.
class IndexedRng {
public:
    explicit IndexedRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream * 0xbf58476d1ce4e5b9ull + 1)) {}

    /// Uniform deviate in [0, 1) for draw `index` of this stream.
    double uniform(std::uint64_t index) const {
        return to_unit(mix(base_ + index * 0x9e3779b97f4a7c15ull));
    }

    /// Uniform deviate in [a, b).
    double uniform(std::uint64_t index, double a, double b) const {
        return a + uniform(index) * (b - a);
    }

    /// Gaussian deviate via Box-Muller. Each index owns two independent
    /// sub-draws, so consecutive indices stay uncorrelated.
    /// sigma = 0 degenerates to exactly `mean`.
    double normal(std::uint64_t index, double mean, double sigma) const {
        if (sigma == 0.0) return mean;
        const std::uint64_t h = base_ + index * 0x9e3779b97f4a7c15ull;
        double u1 = to_unit(mix(h ^ 0x2545f4914f6cdd1dull));
        const double u2 = to_unit(mix(h + 0x6a09e667f3bcc909ull));
        if (u1 <= 0.0) u1 = 5e-324; // log(0) guard; probability ~2^-64
        const double r = std::sqrt(-2.0 * std::log1p(u1 - 1.0));
        return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static double to_unit(std::uint64_t z) {
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    std::uint64_t base_;
};

} // namespace phasemc
