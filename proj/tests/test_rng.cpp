#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "phasemc/core.hpp"
#include "phasemc/rng.hpp"

using namespace phasemc;

TEST_CASE("zero-dispersion limit returns the mean exactly") {
    const IndexedRng rng(1);
    const VelocityDistribution dist{5.0, 0.0, 1.0};
    for (std::uint64_t i = 0; i < 100; ++i) CHECK(sample_velocity(dist, rng, i) == 5.0);
}

TEST_CASE("draws are addressed by index: repeatable and order-free") {
    const IndexedRng a(42), b(42), c(43);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CHECK(a.normal(i, 5.0, 1.0) == b.normal(i, 5.0, 1.0));
        CHECK(a.uniform(i) == b.uniform(i));
    }
    // reversed evaluation order gives the same values
    std::vector<double> fwd, rev;
    for (std::uint64_t i = 0; i < 100; ++i) fwd.push_back(a.normal(i, 0.0, 1.0));
    for (std::uint64_t i = 100; i-- > 0;) rev.push_back(a.normal(i, 0.0, 1.0));
    std::reverse(rev.begin(), rev.end());
    CHECK(fwd == rev);
    // a different seed decorrelates
    int same = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) same += a.uniform(i) == c.uniform(i);
    CHECK(same == 0);
}

TEST_CASE("uniform stays in [0,1) and fills the interval") {
    const IndexedRng rng(7);
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = rng.uniform(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 1e-4);
    CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("gaussian sample statistics over 1e6 draws") {
    const IndexedRng rng(12345, 1);
    const VelocityDistribution dist{5.0, 1.0, 1.0};
    const std::uint64_t n = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double v = sample_velocity(dist, rng, i);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double sigma = std::sqrt(sum2 / static_cast<double>(n) - mean * mean);
    CHECK(std::abs(mean - 5.0) < 0.01);
    CHECK(std::abs(sigma - 1.0) < 0.01);
}

TEST_CASE("Kolmogorov-Smirnov against the analytic normal CDF, 1% level") {
    const IndexedRng rng(98765, 2);
    const std::uint64_t n = 100'000;
    std::vector<double> draws(n);
    for (std::uint64_t i = 0; i < n; ++i) draws[i] = rng.normal(i, -5.0, 1.0);
    std::sort(draws.begin(), draws.end());
    const auto cdf = [](double x) { return 0.5 * std::erfc(-(x + 5.0) / std::numbers::sqrt2); };
    double d = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double f = cdf(draws[i]);
        const double up = static_cast<double>(i + 1) / static_cast<double>(n);
        const double dn = static_cast<double>(i) / static_cast<double>(n);
        d = std::max({d, std::abs(up - f), std::abs(f - dn)});
    }
    const double critical = 1.628 / std::sqrt(static_cast<double>(n)); // alpha = 0.01
    CHECK(d < critical);
}
