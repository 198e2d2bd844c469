#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "phasemc/detector.hpp"
#include "phasemc/rng.hpp"

using namespace phasemc;
namespace {
constexpr double kPi = std::numbers::pi;

DetectorArray random_fill(std::uint64_t salt, std::uint64_t n, int channels = 2) {
    DetectorArray det(-1.0, 1.0, 0.02, channels, 1.0);
    const IndexedRng rng(900 + salt);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.uniform(3 * i, -1.1, 1.1); // includes some overflow
        const double phi = rng.uniform(3 * i + 1, -kPi, kPi);
        const auto ch = static_cast<std::uint32_t>(
            rng.uniform(3 * i + 2) * channels);
        det.record(x, phi, ch);
    }
    return det;
}
} // namespace

TEST_CASE("record accumulates unit phasors") {
    DetectorArray det(0.0, 1.0, 1.0, 1, 0.0);
    det.record(0.5, 0.0, 0);
    CHECK(det.bin(0).channels[0].sum.real() == doctest::Approx(1.0));
    CHECK(det.bin(0).channels[0].sum.imag() == doctest::Approx(0.0));
    CHECK(det.bin(0).channels[0].count == 1);

    det.record(0.5, kPi, 0); // perfect cancellation
    CHECK(std::abs(det.bin(0).channels[0].sum) < 1e-15);
    CHECK(det.bin(0).channels[0].count == 2);
}

TEST_CASE("four quarter-turn phasors cancel") {
    DetectorArray det(0.0, 1.0, 1.0, 1, 0.0);
    Complex brute{0.0, 0.0};
    for (const double phi : {0.0, kPi / 2.0, kPi, 1.5 * kPi}) {
        det.record(0.5, phi, 0);
        brute += std::polar(1.0, phi);
    }
    CHECK(std::abs(brute) < 1e-15); // independent phasor sum
    CHECK(std::abs(det.bin(0).channels[0].sum - brute) < 1e-15);
    CHECK(det.bin(0).channels[0].count == 4);
}

TEST_CASE("finalize_bin aggregates channels by 1/sqrt(N_k)") {
    SUBCASE("one particle") {
        DetectorArray det(0.0, 1.0, 1.0, 1, 0.0);
        det.record(0.5, 0.7, 0);
        CHECK(recorded_count(det.bin(0)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two channels, one particle each, equal phases: N_bar = 4 while N = 2") {
        DetectorArray det(0.0, 1.0, 1.0, 2, 0.0);
        det.record(0.5, 0.0, 0);
        det.record(0.5, 0.0, 1);
        const Complex psi = finalize_bin(det.bin(0));
        CHECK(psi.real() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(recorded_count(det.bin(0)) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(det.raw_counts()[0] == 2.0);
    }
    SUBCASE("n equal-phase particles: psi = sqrt(n) e^{i phi}, N_bar = n") {
        for (const long n : {2L, 9L, 4096L}) {
            DetectorArray det(0.0, 1.0, 1.0, 1, 0.0);
            for (long i = 0; i < n; ++i) det.record(0.5, 1.1, 0);
            const Complex psi = finalize_bin(det.bin(0));
            const Complex want = std::sqrt(static_cast<double>(n)) * std::polar(1.0, 1.1);
            CHECK(std::abs(psi - want) < 1e-9 * std::abs(want));
            CHECK(recorded_count(det.bin(0)) ==
                  doctest::Approx(static_cast<double>(n)).epsilon(1e-11));
        }
    }
    SUBCASE("empty bin reports zero") {
        DetectorArray det(0.0, 1.0, 1.0, 3, 0.0);
        CHECK(recorded_count(det.bin(0)) == 0.0);
    }
}

TEST_CASE("recorded count of two uniform-phase channels is 2n(1+cos(gap))") {
    for (const long n : {1L, 5L, 400L}) {
        for (const double gap : {0.0, 0.8, 2.0, kPi}) {
            DetectorArray det(0.0, 1.0, 1.0, 2, 0.0);
            Complex brute1{0.0, 0.0}, brute2{0.0, 0.0};
            for (long i = 0; i < n; ++i) {
                det.record(0.5, 0.3, 0);
                det.record(0.5, 0.3 + gap, 1);
                brute1 += std::polar(1.0, 0.3);
                brute2 += std::polar(1.0, 0.3 + gap);
            }
            const double rn = std::sqrt(static_cast<double>(n));
            const double brute = std::norm(brute1 / rn + brute2 / rn);
            const double expected = 2.0 * static_cast<double>(n) * (1.0 + std::cos(gap));
            CHECK(brute == doctest::Approx(expected).epsilon(1e-9));
            CHECK(recorded_count(det.bin(0)) ==
                  doctest::Approx(expected).epsilon(1e-9));
        }
    }
    SUBCASE("pi gap with equal counts cancels to rounding") {
        DetectorArray det(0.0, 1.0, 1.0, 2, 0.0);
        for (long i = 0; i < 1000; ++i) {
            det.record(0.5, 0.3, 0);
            det.record(0.5, 0.3 + kPi, 1);
        }
        CHECK(recorded_count(det.bin(0)) < 1e-12);
    }
}

TEST_CASE("bins tile half-open intervals") {
    DetectorArray det(0.0, 1.0, 0.1, 1, 0.0);
    det.record(0.0, 0.0, 0);   // left edge of bin 0
    det.record(0.1, 0.0, 0);   // left edge of bin 1
    det.record(0.0999999999, 0.0, 0);
    CHECK(det.bin(0).channels[0].count == 2);
    CHECK(det.bin(1).channels[0].count == 1);
    det.record(1.0, 0.0, 0); // x_max belongs to overflow
    CHECK(det.overflow_high() == 1);
    det.record(-1e-12, 0.0, 0);
    CHECK(det.overflow_low() == 1);
}

TEST_CASE("non-finite inputs are rejected with a diagnostic count") {
    DetectorArray det(0.0, 1.0, 0.1, 1, 0.0);
    det.record(std::nan(""), 0.0, 0);
    det.record(0.5, std::numeric_limits<double>::infinity(), 0);
    CHECK(det.rejected() == 2);
    CHECK(det.binned() == 0);
}

TEST_CASE("accumulator magnitudes never exceed counts") {
    const DetectorArray det = random_fill(1, 20000);
    for (Eigen::Index i = 0; i < det.bin_count(); ++i)
        for (const auto& ch : det.bin(i).channels)
            CHECK(std::abs(ch.sum) <= static_cast<double>(ch.count) + 1e-9);
}

TEST_CASE("recorded count never exceeds the Cauchy-Schwarz bound") {
    const DetectorArray det = random_fill(2, 30000, 3);
    const ArrayXd nbar = det.recorded_counts();
    for (Eigen::Index i = 0; i < det.bin_count(); ++i) {
        double bound = 0.0;
        for (const auto& ch : det.bin(i).channels)
            bound += std::sqrt(static_cast<double>(ch.count));
        CHECK(nbar[i] <= bound * bound * (1.0 + 1e-12) + 1e-9);
    }
}

TEST_CASE("merge: identity, doubling, geometry checks, split equivalence") {
    const DetectorArray d = random_fill(3, 10000);
    SUBCASE("identity") {
        DetectorArray empty(-1.0, 1.0, 0.02, 2, 1.0);
        const DetectorArray m = merge(empty, d);
        CHECK((m.channel_counts() == d.channel_counts()).all());
        CHECK((m.channel_sums() == d.channel_sums()).all());
    }
    SUBCASE("doubling") {
        const DetectorArray m = merge(d, d);
        CHECK((m.channel_counts() == 2 * d.channel_counts()).all());
        CHECK(m.overflow() == 2 * d.overflow());
    }
    SUBCASE("geometry mismatch is a hard error") {
        DetectorArray other(-1.0, 1.0, 0.04, 2, 1.0);
        CHECK_THROWS_AS(merge(d, other), std::invalid_argument);
        DetectorArray later(-1.0, 1.0, 0.02, 2, 2.0);
        CHECK_THROWS_AS(merge(d, later), std::invalid_argument);
    }
    SUBCASE("serial fill equals two-way split and merge") {
        const IndexedRng rng(900 + 4);
        DetectorArray serial(-1.0, 1.0, 0.02, 2, 1.0);
        DetectorArray lo(-1.0, 1.0, 0.02, 2, 1.0), hi(-1.0, 1.0, 0.02, 2, 1.0);
        const std::uint64_t n = 20000;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double x = rng.uniform(3 * i, -1.1, 1.1);
            const double phi = rng.uniform(3 * i + 1, -kPi, kPi);
            const auto ch = static_cast<std::uint32_t>(rng.uniform(3 * i + 2) * 2);
            serial.record(x, phi, ch);
            (i < n / 2 ? lo : hi).record(x, phi, ch);
        }
        const DetectorArray joined = merge(lo, hi);
        CHECK((joined.channel_counts() == serial.channel_counts()).all());
        double worst = 0.0;
        for (Eigen::Index i = 0; i < joined.channel_sums().size(); ++i) {
            const Complex a = joined.channel_sums()(i), b = serial.channel_sums()(i);
            worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}));
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("density profile normalization and empty detector") {
    DetectorArray det(0.0, 1.0, 0.25, 1, 2.0);
    SUBCASE("all-zero detector gives an all-zero profile") {
        const DensityProfile p = det.density_profile(100.0);
        CHECK(p.raw_density.abs().maxCoeff() == 0.0);
        CHECK(p.recorded_density.abs().maxCoeff() == 0.0);
    }
    SUBCASE("densities divide by total and bin width") {
        for (int i = 0; i < 10; ++i) det.record(0.1, 0.0, 0);
        const DensityProfile p = det.density_profile(100.0);
        CHECK(p.raw_density[0] == doctest::Approx(10.0 / (100.0 * 0.25)));
        CHECK(p.recorded_density[0] == doctest::Approx(10.0 / (100.0 * 0.25)).epsilon(1e-9));
        CHECK(p.snapshot_time == 2.0);
    }
    SUBCASE("non-positive totals are rejected") {
        CHECK_THROWS_AS(det.density_profile(0.0), std::invalid_argument);
    }
}
