#include "phasemc/crank_nicolson.hpp"

#include <stdexcept>
#include <vector>

namespace phasemc {

CrankNicolson1D::CrankNicolson1D(double x_lo, double x_hi, Eigen::Index points, double dt)
    : x_lo_(x_lo), x_hi_(x_hi), dt_(dt), points_(points) {
    if (points < 3) throw std::invalid_argument("crank_nicolson: need at least 3 grid points");
    if (!(x_hi > x_lo) || !(dt > 0.0))
        throw std::invalid_argument("crank_nicolson: bad domain or time step");
    dx_ = (x_hi - x_lo) / static_cast<double>(points - 1);

    // H = -(1/2) d2/dx2 ->  A = I + i dt H / 2 on the interior points.
    const Complex lambda = Complex{0.0, dt_ / (4.0 * dx_ * dx_)};
    diag_ = 1.0 + 2.0 * lambda;
    off_ = -lambda;
    rhs_diag_ = 1.0 - 2.0 * lambda;
    rhs_off_ = lambda;

    // Constant-coefficient Thomas: the elimination ratios depend only on the
    // matrix, so precompute them once.
    const Eigen::Index n = points_ - 2;
    sweep_.resize(n);
    Complex denom = diag_;
    sweep_[0] = off_ / denom;
    for (Eigen::Index i = 1; i < n; ++i) {
        denom = diag_ - off_ * sweep_[i - 1];
        sweep_[i] = off_ / denom;
    }
}

ArrayXd CrankNicolson1D::grid() const {
    return ArrayXd::LinSpaced(points_, x_lo_, x_hi_);
}

void CrankNicolson1D::advance(ArrayXcd& psi, long nsteps) const {
    if (psi.size() != points_)
        throw std::invalid_argument("crank_nicolson: state size does not match grid");
    const Eigen::Index n = points_ - 2;
    static thread_local std::vector<Complex> rhs;
    rhs.resize(static_cast<std::size_t>(n));

    for (long step = 0; step < nsteps; ++step) {
        psi[0] = Complex{0.0, 0.0};
        psi[points_ - 1] = Complex{0.0, 0.0};
        // rhs = B psi (interior), endpoints contribute zero
        for (Eigen::Index i = 0; i < n; ++i) {
            rhs[static_cast<std::size_t>(i)] =
                rhs_off_ * psi[i] + rhs_diag_ * psi[i + 1] + rhs_off_ * psi[i + 2];
        }
        // Thomas forward sweep with cached ratios
        Complex denom = diag_;
        rhs[0] /= denom;
        for (Eigen::Index i = 1; i < n; ++i) {
            denom = diag_ - off_ * sweep_[i - 1];
            rhs[static_cast<std::size_t>(i)] =
                (rhs[static_cast<std::size_t>(i)] - off_ * rhs[static_cast<std::size_t>(i - 1)]) / denom;
        }
        // back substitution straight into psi
        psi[n] = rhs[static_cast<std::size_t>(n - 1)];
        for (Eigen::Index i = n - 2; i >= 0; --i) {
            psi[i + 1] = rhs[static_cast<std::size_t>(i)] - sweep_[i] * psi[i + 2];
        }
    }
}

double CrankNicolson1D::norm(const ArrayXcd& psi) const {
    return psi.abs2().sum() * dx_;
}

ArrayXcd crank_nicolson_evolve(const ArrayXcd& psi0, double dt, double dx, long steps) {
    const auto points = psi0.size();
    CrankNicolson1D cn(0.0, dx * static_cast<double>(points - 1), points, dt);
    ArrayXcd psi = psi0;
    cn.advance(psi, steps);
    return psi;
}

} // namespace phasemc
