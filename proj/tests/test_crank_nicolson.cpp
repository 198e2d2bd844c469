#include "doctest.h"

#include <cmath>

#include "phasemc/crank_nicolson.hpp"
#include "phasemc/reference.hpp"

using namespace phasemc;

TEST_CASE("zero initial amplitude stays zero") {
    CrankNicolson1D cn(-5.0, 5.0, 501, 1e-3);
    ArrayXcd psi = ArrayXcd::Zero(501);
    cn.advance(psi, 500);
    CHECK(psi.abs().maxCoeff() == 0.0);
}

TEST_CASE("norm is conserved to rounding over 1e4 steps") {
    const PacketParams p{0.0, 5.0, 0.5};
    CrankNicolson1D cn(-20.0, 30.0, 5001, 1e-4);
    ArrayXcd psi = psi_free_packet(cn.grid(), 0.0, p);
    const double n0 = cn.norm(psi);
    cn.advance(psi, 10000);
    CHECK(std::abs(cn.norm(psi) / n0 - 1.0) < 1e-8);
}

TEST_CASE("free-space propagation matches the exact packet at t=1") {
    const PacketParams p{0.0, 5.0, 0.5};
    const double dt = 1e-4;
    CrankNicolson1D cn(-15.0, 25.0, 20001, dt);
    const ArrayXd x = cn.grid();
    ArrayXcd psi = psi_free_packet(x, 0.0, p);
    cn.advance(psi, 10000); // t = 1
    const ArrayXd rho = psi.abs2();
    const ArrayXd exact = gaussian_packet_density(x, 1.0, p);
    CHECK((rho - exact).abs().maxCoeff() < 1e-4);
}

TEST_CASE("Richardson convergence ratios are close to 4") {
    // Successive-halving differences isolate the refined dimension's error,
    // so the other dimension's fixed discretization floor cancels.
    const PacketParams p{0.0, 3.0, 0.5};
    const double t_end = 0.25;

    SUBCASE("second order in dt") {
        const auto solve_dt = [&](double dt) {
            CrankNicolson1D cn(-10.0, 15.0, 12501, dt);
            ArrayXcd psi = psi_free_packet(cn.grid(), 0.0, p);
            cn.advance(psi, std::lround(t_end / dt));
            return psi;
        };
        const ArrayXcd u1 = solve_dt(5e-3);
        const ArrayXcd u2 = solve_dt(2.5e-3);
        const ArrayXcd u3 = solve_dt(1.25e-3);
        const double e12 = (u1 - u2).abs().maxCoeff();
        const double e23 = (u2 - u3).abs().maxCoeff();
        CHECK(e12 / e23 == doctest::Approx(4.0).epsilon(0.15));
    }

    SUBCASE("second order in dx") {
        const double dt = 2.5e-4;
        const auto solve_points = [&](Eigen::Index points) {
            CrankNicolson1D cn(-10.0, 15.0, points, dt);
            ArrayXcd psi = psi_free_packet(cn.grid(), 0.0, p);
            cn.advance(psi, std::lround(t_end / dt));
            return psi;
        };
        const ArrayXcd u1 = solve_points(1251);  // dx = 0.02
        const ArrayXcd u2 = solve_points(2501);  // dx = 0.01
        const ArrayXcd u3 = solve_points(5001);  // dx = 0.005
        // compare on the shared coarse nodes
        double e12 = 0.0, e23 = 0.0;
        for (Eigen::Index i = 0; i < u1.size(); ++i)
            e12 = std::max(e12, std::abs(u1[i] - u2[2 * i]));
        for (Eigen::Index i = 0; i < u2.size(); ++i)
            e23 = std::max(e23, std::abs(u2[i] - u3[2 * i]));
        CHECK(e12 / e23 == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("Dirichlet wall run agrees with the image construction at t=2") {
    // slow packet so a modest grid is converged
    const WallParams wp{-10.0, 2.0, 0.5, 0.0};
    const double dt = 5e-4;
    CrankNicolson1D cn(-25.0, 0.0, 6251, dt);
    const ArrayXd x = cn.grid();
    ArrayXcd psi = psi_wall_image(x, 0.0, wp);
    cn.advance(psi, std::lround(2.0 / dt));
    const ArrayXd rho_cn = psi.abs2() / cn.norm(psi);
    const ArrayXd rho_img = density_wall_image(x, 2.0, wp);
    CHECK((rho_cn - rho_img).abs().maxCoeff() < 1e-3);
    // hard-wall boundary value is pinned at zero
    CHECK(std::norm(psi[psi.size() - 1]) < 1e-6);
}
