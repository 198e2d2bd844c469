#pragma once

#include <Eigen/Core>

#include "phasemc/detector.hpp"

namespace phasemc {

/// Crank-Nicolson propagator for the free 1D Schrodinger equation
/// (hbar/m = 1) on [x_lo, x_hi] with Dirichlet endpoints pinned to zero.
///
/// The Cayley form (I + i dt H/2) psi' = (I - i dt H/2) psi is unitary in
/// the discrete l2 norm, so the norm drifts only at rounding level over any
/// number of steps. Second order in dt and dx; convergence is checked by
/// grid halving where the accuracy matters.
class CrankNicolson1D {
public:
    /// `points` counts the full grid including both pinned endpoints.
    CrankNicolson1D(double x_lo, double x_hi, Eigen::Index points, double dt);

    /// Full grid coordinates (endpoints included).
    ArrayXd grid() const;

    /// Advances the state by `nsteps` steps of dt. `psi` holds the full grid
    /// including endpoint entries, which are held at zero.
    void advance(ArrayXcd& psi, long nsteps) const;

    /// Discrete l2 norm integral: sum |psi|^2 dx.
    double norm(const ArrayXcd& psi) const;

    double dx() const { return dx_; }
    double dt() const { return dt_; }
    Eigen::Index points() const { return points_; }

private:
    double x_lo_;
    double x_hi_;
    double dx_;
    double dt_;
    Eigen::Index points_;
    Complex diag_;      // A diagonal
    Complex off_;       // A off-diagonal
    Complex rhs_diag_;  // B diagonal (B = conj(A) row pattern)
    Complex rhs_off_;
    ArrayXcd sweep_;    // cached Thomas forward-elimination ratios
};

/// One-call form: evolves `psi0` (full grid, Dirichlet ends) by `steps`
/// steps of `dt` on a uniform grid of spacing `dx`.
ArrayXcd crank_nicolson_evolve(const ArrayXcd& psi0, double dt, double dx, long steps);

} // namespace phasemc
