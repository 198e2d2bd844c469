#pragma once

#include <Eigen/Core>

#include "phasemc/detector.hpp"

namespace phasemc {

/// Fringe contrast of a binned density profile over [lo, hi], measured at a
/// known fringe period.
///
/// The histogram is first reconstructed as a smooth curve with a cubic
/// B-spline kernel at the profile's own bin width, then demodulated with a
/// Hann window:  V = 2 |<rho w e^{-2 pi i x / period}>| / <rho w>.
///
/// Measuring at the expected period makes the number an honest "resolved
/// fringes" figure of merit: a clean pattern sampled well below its period
/// scores near 1, a fringe-free histogram scores near 0, and a pattern finer
/// than roughly two bins scores near 0 because the reconstruction cannot
/// represent it.
double fringe_visibility(const Eigen::Ref<const ArrayXd>& centers,
                         const Eigen::Ref<const ArrayXd>& density, double lo, double hi,
                         double period);

/// Mean distance between adjacent fringe maxima over [lo, hi].
///
/// The profile is Gaussian-smoothed at expected_period/8 to suppress bin
/// noise, local maxima above 10% of the window peak are refined with a
/// parabolic fit, and the mean adjacent spacing is returned (0 when fewer
/// than two maxima survive).
double fringe_spacing(const Eigen::Ref<const ArrayXd>& centers,
                      const Eigen::Ref<const ArrayXd>& density, double lo, double hi,
                      double expected_period);

/// Smooth reconstruction used by both measurements: cubic B-spline synthesis
/// of the bin values, evaluated at x (bins outside the profile read as 0).
double bspline_reconstruct(const Eigen::Ref<const ArrayXd>& centers,
                           const Eigen::Ref<const ArrayXd>& values, double x);

} // namespace phasemc
