#include "doctest.h"

#include <cmath>
#include <numbers>

#include "phasemc/reference.hpp"

using namespace phasemc;
namespace {
constexpr double kPi = std::numbers::pi;

double rel_l2_over_core(const ArrayXd& a, const ArrayXd& ref, double core_fraction = 0.01) {
    const double cut = core_fraction * ref.maxCoeff();
    double res2 = 0.0, ref2 = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (ref[i] <= cut) continue;
        res2 += (a[i] - ref[i]) * (a[i] - ref[i]);
        ref2 += ref[i] * ref[i];
    }
    return std::sqrt(res2 / ref2);
}
} // namespace

TEST_CASE("amplitude route matches the closed-form density to 1e-12") {
    const PacketParams p{0.0, 5.0, 0.5};
    for (const double t : {0.1, 1.0, 4.0, 10.0}) {
        const double c = p.x0 + p.v0 * t;
        const double s = sigma_x(t, p.sigma0);
        const ArrayXd x = ArrayXd::LinSpaced(1000, c - 6.0 * s, c + 6.0 * s);
        const ArrayXd via_psi = psi_free_packet(x, t, p).abs2();
        const ArrayXd direct = gaussian_packet_density(x, t, p);
        CHECK(((via_psi - direct).abs() / direct.max(1e-300)).maxCoeff() < 1e-12);
    }
}

TEST_CASE("packet peak rides at x0 + v0 t and spreads as expected") {
    const PacketParams p{0.0, 5.0, 0.5};
    CHECK(sigma_x(4.0, 0.5) == doctest::Approx(std::sqrt(16.25)).epsilon(1e-14));
    // frozen: 1/(sqrt(2 pi) * sqrt(16.25)) evaluated independently
    CHECK(gaussian_packet_density(20.0, 4.0, p) == doctest::Approx(0.0989949).epsilon(1e-4));
    for (const double t : {0.5, 3.0, 9.0}) {
        const double c = p.x0 + p.v0 * t;
        const ArrayXd x = ArrayXd::LinSpaced(2001, c - 20.0, c + 20.0);
        const ArrayXd rho = gaussian_packet_density(x, t, p);
        Eigen::Index imax = 0;
        rho.maxCoeff(&imax);
        CHECK(std::abs(x[imax] - c) < 0.05);
    }
}

TEST_CASE("amplitude normalization by quadrature") {
    const PacketParams p{0.0, 5.0, 0.5};
    for (const double t : {0.0, 1.0, 10.0}) {
        const double c = p.x0 + p.v0 * t;
        const double s = sigma_x(t, p.sigma0);
        const auto f = [&](double x) { return std::norm(psi_free_packet(x, t, p)); };
        const double norm = integrate_simpson(f, c - 9.0 * s, c + 9.0 * s, 40000);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("large-t curve: center value, accuracy at t=10, monotone convergence") {
    const PacketParams p{0.0, 5.0, 0.5};
    const double dx = 0.01;
    CHECK(density_single_approx(p.x0 + p.v0 * 4.0, 4.0, p, dx) ==
          doctest::Approx(dx / (std::sqrt(2.0 * kPi) * 4.0)).epsilon(1e-14));

    std::vector<double> devs;
    for (const double t : {2.0, 4.0, 6.0, 8.0, 10.0}) {
        const double c = p.x0 + p.v0 * t;
        const double s = sigma_x(t, p.sigma0);
        const ArrayXd x = ArrayXd::LinSpaced(4001, c - 3.0 * s, c + 3.0 * s);
        const ArrayXd approx = density_single_approx(x, t, p, dx) / dx;
        const ArrayXd exact = gaussian_packet_density(x, t, p);
        devs.push_back(((approx / exact) - 1.0).abs().maxCoeff());
    }
    CHECK(devs.back() < 0.01);
    for (std::size_t i = 1; i < devs.size(); ++i) CHECK(devs[i] < devs[i - 1]);

    // pointwise limit: the two curves coincide as t grows without bound
    const double t = 1e4;
    const double c = p.x0 + p.v0 * t;
    for (const double u : {-2.0, 0.0, 1.5}) {
        const double x = c + u * t;
        const double ratio = density_single_approx(x, t, p, dx) / dx / gaussian_packet_density(x, t, p);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("two-packet superposition symmetry and midpoint behavior") {
    const TwoPacketParams p{-20.0, 20.0, 5.0, 0.5};
    SUBCASE("equal moduli at the midpoint for all times") {
        for (const double t : {0.5, 4.0, 9.0}) {
            const Complex a = psi_free_packet(0.0, t, {p.x1, p.v0, p.sigma0});
            const Complex b = psi_free_packet(0.0, t, {p.x2, -p.v0, p.sigma0});
            CHECK(std::abs(a) == doctest::Approx(std::abs(b)).epsilon(1e-13));
        }
    }
    SUBCASE("midpoint density is twice the single-packet density (constructive)") {
        for (const double t : {1.0, 4.0, 10.0}) {
            const double two = std::norm(psi_two_exact(0.0, t, p));
            const double one = std::norm(psi_free_packet(0.0, t, {p.x1, p.v0, p.sigma0}));
            CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
        }
    }
    SUBCASE("disjoint packets superpose incoherently at early times") {
        const double t = 0.5;
        const double x = p.x1 + p.v0 * t; // center of packet 1, 35 units from packet 2
        const double lhs = std::norm(psi_two_exact(x, t, p));
        const double rhs = 0.5 * (std::norm(psi_free_packet(x, t, {p.x1, p.v0, p.sigma0})) +
                                  std::norm(psi_free_packet(x, t, {p.x2, -p.v0, p.sigma0})));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("two-packet detector-model curve") {
    const TwoPacketParams p{-20.0, 20.0, 5.0, 0.5};
    const double dx = 0.01;
    SUBCASE("reduces to the halved single-packet curve where one channel is empty") {
        const double t = 1.0;
        const double x = p.x1 + p.v0 * t; // far from packet 2
        const double lhs = density_two_approx(x, t, p, dx);
        const double rhs = 0.5 * density_single_approx(x, t, {p.x1, p.v0, p.sigma0}, dx);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
    SUBCASE("midpoint is fully constructive: |sqrt(N1)+sqrt(N2)|^2 = 2(N1+N2)") {
        const double t = 4.0;
        const double v1 = (0.0 - p.x1) / t;
        const double n1 = dx / (2.0 * std::sqrt(2.0 * kPi) * t) *
                          std::exp(-0.5 * (v1 - p.v0) * (v1 - p.v0));
        CHECK(density_two_approx(0.0, t, p, dx) == doctest::Approx(4.0 * n1).epsilon(1e-12));
    }
    SUBCASE("matches the exact superposed density at t=10 in windowed L2") {
        const double t = 10.0;
        const ArrayXd x = ArrayXd::LinSpaced(12001, -60.0, 60.0);
        const ArrayXd approx = density_two_approx(x, t, p, dx) / dx;
        const ArrayXd exact = psi_two_exact(x, t, p).abs2();
        CHECK(rel_l2_over_core(approx, exact) < 0.01);
    }
}

TEST_CASE("wall detector-model curve") {
    const WallParams p{-20.0, 5.0, 0.5, 0.0};
    const double dx = 0.01;
    SUBCASE("vanishes identically at the wall and rejects x above it") {
        for (const double t : {0.5, 4.0, 10.0})
            CHECK(density_wall_approx(0.0, t, p, dx) == 0.0);
        CHECK_THROWS_AS(density_wall_approx(0.5, 4.0, p, dx), std::domain_error);
    }
    SUBCASE("pre-collision it reduces to the free-flight curve") {
        const double t = 1.0;
        const double x = p.x0 + p.v0 * t; // -15, reflected channel empty
        const double lhs = density_wall_approx(x, t, p, dx);
        const double rhs = density_single_approx(x, t, {p.x0, p.v0, p.sigma0}, dx);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
    SUBCASE("matches the image-method density at t=10 in windowed L2") {
        const double t = 10.0;
        const ArrayXd x = ArrayXd::LinSpaced(6500, -65.0, -0.005);
        const ArrayXd approx = density_wall_approx(x, t, p, dx) / dx;
        const ArrayXd exact = density_wall_image(x, t, p);
        CHECK(rel_l2_over_core(approx, exact) < 0.01);
    }
}

TEST_CASE("image-method construction") {
    const WallParams p{-20.0, 5.0, 0.5, 0.0};
    SUBCASE("odd construction vanishes at the wall exactly") {
        for (const double t : {0.1, 2.0, 4.0, 10.0})
            CHECK(std::norm(psi_wall_image(0.0, t, p)) == 0.0);
    }
    SUBCASE("image correction is negligible while the packet is far from the wall") {
        const double t = 0.1;
        for (const double x : {-21.0, -19.5, -18.0}) {
            const double img = density_wall_image(x, t, p);
            const double free = std::norm(psi_free_packet(x, t, {p.x0, p.v0, p.sigma0}));
            CHECK(img == doctest::Approx(free).epsilon(1e-10));
        }
    }
    SUBCASE("unit norm on the half-line") {
        for (const double t : {0.1, 4.0, 10.0})
            CHECK(wall_image_norm(t, p) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("recorded-count error propagation") {
    CHECK(recorded_count_sigma(100.0, 0.0, 0.3) == doctest::Approx(10.0).epsilon(1e-12));
    // fully constructive equal channels: Var = 8 mu
    CHECK(recorded_count_sigma(50.0, 50.0, 1.0) ==
          doctest::Approx(std::sqrt(8.0 * 50.0)).epsilon(1e-12));
    // fully destructive equal channels: degenerate first order
    CHECK(recorded_count_sigma(50.0, 50.0, -1.0) == doctest::Approx(0.0));
}

TEST_CASE("compare: residual norms and core masking") {
    const ArrayXd x = ArrayXd::LinSpaced(1001, -5.0, 5.0);
    const ArrayXd ref = (-(x * x) / 2.0).exp() / std::sqrt(2.0 * kPi);
    SUBCASE("identical profiles give zero norms") {
        const ComparisonReport r = compare(ref, ref, ref, 1e6, 0.01);
        CHECK(r.l2_abs == 0.0);
        CHECK(r.linf == 0.0);
        CHECK(r.z_exceedances == 0);
    }
    SUBCASE("constant offset appears as the Linf norm") {
        const ArrayXd sim = ref + 0.001;
        const ComparisonReport r = compare(sim, ref, ref, 1e6, 0.01);
        CHECK(r.linf == doctest::Approx(0.001).epsilon(1e-9));
    }
    SUBCASE("tails below 1% of the peak are excluded from the core") {
        const ComparisonReport r = compare(ref, ref, ref, 1e6, 0.01);
        const double cut = 0.01 * ref.maxCoeff();
        for (Eigen::Index i = 0; i < ref.size(); ++i) CHECK(r.core[i] == (ref[i] > cut));
    }
}
