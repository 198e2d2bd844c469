#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>

#include "phasemc/detector.hpp"

namespace phasemc {

/// One free Gaussian wavepacket: origin x0, signed mean velocity v0, initial
/// spatial dispersion sigma0. The default sigma0 = 1/2 is the minimum-spread
/// pairing with a unit velocity dispersion (sigma_x * sigma_v = 1/2).
struct PacketParams {
    double x0 = 0.0;
    double v0 = 5.0;
    double sigma0 = 0.5;
};

/// Two counter-propagating packets prepared in a single (entangled) state:
/// packet 1 moves right from x1 with +v0, packet 2 left from x2 with -v0.
struct TwoPacketParams {
    double x1 = -20.0;
    double x2 = 20.0;
    double v0 = 5.0;
    double sigma0 = 0.5;
};

/// Packet released at x0 < 0 against a hard wall at wall_x.
struct WallParams {
    double x0 = -20.0;
    double v0 = 5.0;
    double sigma0 = 0.5;
    double wall_x = 0.0;
};

/// Spatial dispersion of a freely spreading packet at time t.
double sigma_x(double t, double sigma0 = 0.5);

/// Amplitude of the free Gaussian wavepacket (unit L2 norm at every t).
Complex psi_free_packet(double x, double t, const PacketParams& p);
ArrayXcd psi_free_packet(const Eigen::Ref<const ArrayXd>& x, double t, const PacketParams& p);

/// Closed-form density of the same packet, written independently of the
/// complex amplitude route:
///   rho(x,t) = exp(-(x - x0 - v0 t)^2 / (2 s^2)) / sqrt(2 pi s^2),
///   s^2 = sigma0^2 + t^2/(4 sigma0^2).
double gaussian_packet_density(double x, double t, const PacketParams& p);
ArrayXd gaussian_packet_density(const Eigen::Ref<const ArrayXd>& x, double t, const PacketParams& p);

/// Large-t analytic shortcut for the recorded occupancy of a detection bin
/// of width delta_x (divide by delta_x for the density curve):
///   N_bar = delta_x/(sqrt(2 pi) t) * exp(-(x - x0 - v0 t)^2/(2 t^2)).
/// Meaningful for t >> 1; exact in the t -> infinity limit.
double density_single_approx(double x, double t, const PacketParams& p, double delta_x);
ArrayXd density_single_approx(const Eigen::Ref<const ArrayXd>& x, double t, const PacketParams& p,
                              double delta_x);

/// Superposed amplitude (psi_1 + psi_2)/sqrt(2) of the counter-propagating pair.
Complex psi_two_exact(double x, double t, const TwoPacketParams& p);
ArrayXcd psi_two_exact(const Eigen::Ref<const ArrayXd>& x, double t, const TwoPacketParams& p);

/// Recorded bin occupancy of the pair in the free-flight detector model:
///   |sqrt(N1) e^{i phi1} + sqrt(N2) e^{i phi2}|^2
/// with the half-weighted channel counts N1, N2 and straight-line phases
/// phi_k = (x - x_k)^2/(2t). Divide by delta_x for the density curve.
double density_two_approx(double x, double t, const TwoPacketParams& p, double delta_x);
ArrayXd density_two_approx(const Eigen::Ref<const ArrayXd>& x, double t, const TwoPacketParams& p,
                           double delta_x);

/// Same detector model for the wall: direct and reflected channels with the
/// pi phase jump carried as a relative minus sign. Exactly zero at the wall.
/// Only defined for x < wall_x; throws std::domain_error otherwise.
double density_wall_approx(double x, double t, const WallParams& p, double delta_x);
ArrayXd density_wall_approx(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p,
                            double delta_x);

/// Dirichlet-wall amplitude by the method of images:
///   psi(x,t) = psi_free(x,t; x0, v0) - psi_free(x,t; 2 wall_x - x0, -v0),
/// which vanishes identically at the wall for the free Hamiltonian.
Complex psi_wall_image(double x, double t, const WallParams& p);
ArrayXcd psi_wall_image(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p);

/// |psi_wall_image|^2 normalized to unit integral over x < wall_x.
ArrayXd density_wall_image(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p);
double density_wall_image(double x, double t, const WallParams& p);

/// Quadrature norm of the image solution over x < wall_x (1 up to the
/// exponentially small initial leak past the wall).
double wall_image_norm(double t, const WallParams& p);

/// Composite-Simpson integral of f sampled on n+1 uniform points over [a, b]
/// (n even).
template <typename F>
double integrate_simpson(F&& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Poisson-propagated standard deviation of the recorded count N_bar of a
/// two-channel bin with expected channel counts mu1, mu2 and phase gap
/// cos_gap = cos(phi1 - phi2). Exact sqrt(mu) in the single-channel limit;
/// between equal well-populated channels it reaches (1 + cos) sqrt(2 mu).
double recorded_count_sigma(double mu1, double mu2, double cos_gap);

/// Residual statistics of a simulated profile against a reference curve.
///
/// Core bins are those where the reference exceeds `core_fraction` of its
/// peak; tails are Poisson-starved and excluded. z-scores divide by the
/// supplied per-bin sigma (density units), floored at one count to keep the
/// quantization scale from manufacturing infinite scores.
struct ComparisonReport {
    ArrayXd residuals;              ///< sim - ref, every bin
    Eigen::Array<bool, Eigen::Dynamic, 1> core; ///< core-bin mask
    ArrayXd z;                      ///< per-bin z-scores (0 outside core)
    double l2_abs = 0.0;            ///< sqrt(sum core residual^2)
    double l2_rel = 0.0;            ///< l2_abs / sqrt(sum core ref^2)
    double linf = 0.0;              ///< max |residual| over core
    double chi2 = 0.0;              ///< sum of core z^2
    Eigen::Index core_bins = 0;
    Eigen::Index z_exceedances = 0; ///< core bins with |z| > z_threshold
    double z_exceed_fraction = 0.0;
    std::optional<double> visibility;
};

struct CompareOptions {
    double core_fraction = 0.01;
    double z_threshold = 3.0;
    double count_floor = 1.0;
};

/// Plain Poisson comparison: sigma_i = sqrt(expected_raw_density_i/(total dx)).
ComparisonReport compare(const Eigen::Ref<const ArrayXd>& sim_density,
                         const Eigen::Ref<const ArrayXd>& ref_density,
                         const Eigen::Ref<const ArrayXd>& expected_raw_density,
                         double total_particles, double bin_width,
                         const CompareOptions& opts = {});

/// Comparison with caller-supplied per-bin sigma in density units (e.g. the
/// channel-aware recorded_count_sigma for interference profiles).
ComparisonReport compare_with_sigma(const Eigen::Ref<const ArrayXd>& sim_density,
                                    const Eigen::Ref<const ArrayXd>& ref_density,
                                    const Eigen::Ref<const ArrayXd>& sigma_density,
                                    double total_particles, double bin_width,
                                    const CompareOptions& opts = {});

} // namespace phasemc
