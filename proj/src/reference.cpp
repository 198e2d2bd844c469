#include "phasemc/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phasemc {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
} // namespace

double sigma_x(double t, double sigma0) {
    return std::sqrt(sigma0 * sigma0 + t * t / (4.0 * sigma0 * sigma0));
}

Complex psi_free_packet(double x, double t, const PacketParams& p) {
    // Minimum-uncertainty Gaussian under free evolution (hbar/m = 1):
    //   s_t = sigma0 + i t/(2 sigma0)
    //   psi = (2 pi sigma0^2)^{-1/4} sqrt(sigma0/s_t)
    //         * exp(-(x-x0-v0 t)^2/(4 sigma0 s_t) + i v0 (x-x0) - i v0^2 t/2)
    const Complex s_t{p.sigma0, t / (2.0 * p.sigma0)};
    const double d = x - p.x0 - p.v0 * t;
    const Complex exponent = -d * d / (4.0 * p.sigma0 * s_t) +
                             kI * (p.v0 * (x - p.x0) - 0.5 * p.v0 * p.v0 * t);
    const double prefactor = std::pow(2.0 * kPi * p.sigma0 * p.sigma0, -0.25);
    return prefactor * std::sqrt(p.sigma0 / s_t) * std::exp(exponent);
}

ArrayXcd psi_free_packet(const Eigen::Ref<const ArrayXd>& x, double t, const PacketParams& p) {
    const Complex s_t{p.sigma0, t / (2.0 * p.sigma0)};
    const double prefactor = std::pow(2.0 * kPi * p.sigma0 * p.sigma0, -0.25);
    const Complex scale = prefactor * std::sqrt(p.sigma0 / s_t);
    const ArrayXd d = x - p.x0 - p.v0 * t;
    const ArrayXcd exponent =
        (-1.0 / (4.0 * p.sigma0 * s_t)) * (d * d).cast<Complex>() +
        kI * (p.v0 * (x - p.x0) - 0.5 * p.v0 * p.v0 * t).cast<Complex>();
    return scale * exponent.exp();
}

double gaussian_packet_density(double x, double t, const PacketParams& p) {
    const double s2 = p.sigma0 * p.sigma0 + t * t / (4.0 * p.sigma0 * p.sigma0);
    const double d = x - p.x0 - p.v0 * t;
    return std::exp(-d * d / (2.0 * s2)) / std::sqrt(2.0 * kPi * s2);
}

ArrayXd gaussian_packet_density(const Eigen::Ref<const ArrayXd>& x, double t,
                                const PacketParams& p) {
    const double s2 = p.sigma0 * p.sigma0 + t * t / (4.0 * p.sigma0 * p.sigma0);
    const ArrayXd d = x - p.x0 - p.v0 * t;
    return (-(d * d) / (2.0 * s2)).exp() / std::sqrt(2.0 * kPi * s2);
}

double density_single_approx(double x, double t, const PacketParams& p, double delta_x) {
    const double d = x - p.x0 - p.v0 * t;
    return delta_x / (std::sqrt(2.0 * kPi) * t) * std::exp(-d * d / (2.0 * t * t));
}

ArrayXd density_single_approx(const Eigen::Ref<const ArrayXd>& x, double t,
                              const PacketParams& p, double delta_x) {
    const ArrayXd d = x - p.x0 - p.v0 * t;
    return delta_x / (std::sqrt(2.0 * kPi) * t) * (-(d * d) / (2.0 * t * t)).exp();
}

Complex psi_two_exact(double x, double t, const TwoPacketParams& p) {
    const PacketParams right{p.x1, p.v0, p.sigma0};
    const PacketParams left{p.x2, -p.v0, p.sigma0};
    return (psi_free_packet(x, t, right) + psi_free_packet(x, t, left)) / std::sqrt(2.0);
}

ArrayXcd psi_two_exact(const Eigen::Ref<const ArrayXd>& x, double t, const TwoPacketParams& p) {
    const PacketParams right{p.x1, p.v0, p.sigma0};
    const PacketParams left{p.x2, -p.v0, p.sigma0};
    return (psi_free_packet(x, t, right) + psi_free_packet(x, t, left)) / std::sqrt(2.0);
}

double density_two_approx(double x, double t, const TwoPacketParams& p, double delta_x) {
    // Channel counts carry the 1/2 budget split of the entangled pair.
    const double v1 = (x - p.x1) / t;
    const double v2 = (x - p.x2) / t;
    const double n1 = delta_x / (2.0 * std::sqrt(2.0 * kPi) * t) *
                      std::exp(-0.5 * (v1 - p.v0) * (v1 - p.v0));
    const double n2 = delta_x / (2.0 * std::sqrt(2.0 * kPi) * t) *
                      std::exp(-0.5 * (v2 + p.v0) * (v2 + p.v0));
    const double phi1 = (x - p.x1) * (x - p.x1) / (2.0 * t);
    const double phi2 = (x - p.x2) * (x - p.x2) / (2.0 * t);
    return std::norm(std::sqrt(n1) * std::exp(kI * phi1) + std::sqrt(n2) * std::exp(kI * phi2));
}

ArrayXd density_two_approx(const Eigen::Ref<const ArrayXd>& x, double t,
                           const TwoPacketParams& p, double delta_x) {
    ArrayXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = density_two_approx(x[i], t, p, delta_x);
    return out;
}

double density_wall_approx(double x, double t, const WallParams& p, double delta_x) {
    if (x > p.wall_x) throw std::domain_error("density_wall_approx: x must be below the wall");
    const double d1 = x - p.x0 - p.v0 * t;                      // direct flight
    const double d2 = (x - p.wall_x) + (p.x0 - p.wall_x) + p.v0 * t; // mirrored flight
    const double a1 = std::exp(-d1 * d1 / (4.0 * t * t));
    const double a2 = std::exp(-d2 * d2 / (4.0 * t * t));
    const double phi1 = (x - p.x0) * (x - p.x0) / (2.0 * t);
    const double phi2 = (x + p.x0 - 2.0 * p.wall_x) * (x + p.x0 - 2.0 * p.wall_x) / (2.0 * t);
    // The reflected channel enters with a minus sign: the pi phase jump.
    const double scale = delta_x / (std::sqrt(2.0 * kPi) * t);
    return scale * std::norm(a1 * std::exp(kI * phi1) - a2 * std::exp(kI * phi2));
}

ArrayXd density_wall_approx(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p,
                            double delta_x) {
    ArrayXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = density_wall_approx(x[i], t, p, delta_x);
    return out;
}

Complex psi_wall_image(double x, double t, const WallParams& p) {
    const PacketParams direct{p.x0, p.v0, p.sigma0};
    const PacketParams mirror{2.0 * p.wall_x - p.x0, -p.v0, p.sigma0};
    return psi_free_packet(x, t, direct) - psi_free_packet(x, t, mirror);
}

ArrayXcd psi_wall_image(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p) {
    const PacketParams direct{p.x0, p.v0, p.sigma0};
    const PacketParams mirror{2.0 * p.wall_x - p.x0, -p.v0, p.sigma0};
    return psi_free_packet(x, t, direct) - psi_free_packet(x, t, mirror);
}

double wall_image_norm(double t, const WallParams& p) {
    // Support of the pair: packet centers +- 10 dispersions, clipped to the wall.
    const double s = sigma_x(t, p.sigma0);
    const double c1 = p.x0 + p.v0 * t;
    const double c2 = 2.0 * p.wall_x - p.x0 - p.v0 * t;
    const double lo = std::min(c1, c2) - 10.0 * s;
    const double hi = p.wall_x;
    const auto f = [&](double x) { return std::norm(psi_wall_image(x, t, p)); };
    return integrate_simpson(f, lo, hi, 20000);
}

ArrayXd density_wall_image(const Eigen::Ref<const ArrayXd>& x, double t, const WallParams& p) {
    const double norm = wall_image_norm(t, p);
    return psi_wall_image(x, t, p).abs2() / norm;
}

double density_wall_image(double x, double t, const WallParams& p) {
    return std::norm(psi_wall_image(x, t, p)) / wall_image_norm(t, p);
}

double recorded_count_sigma(double mu1, double mu2, double cos_gap) {
    // Linearized Poisson propagation through N_bar = N1 + N2 + 2 c sqrt(N1 N2):
    //   Var = sum_k mu_k (1 + c sqrt(mu_j / mu_k))^2.
    // The derivative blows up for a starved channel where the linearization is
    // invalid; clamping the denominator at 1/4 reproduces the discrete-jump
    // variance ~4 c^2 mu_j mu_k there and the exact single-channel limit at 0.
    const double m1 = std::max(mu1, 0.0);
    const double m2 = std::max(mu2, 0.0);
    const double t1 = m1 == 0.0 ? 0.0
                                : m1 * std::pow(1.0 + cos_gap * std::sqrt(m2 / std::max(m1, 0.25)), 2);
    const double t2 = m2 == 0.0 ? 0.0
                                : m2 * std::pow(1.0 + cos_gap * std::sqrt(m1 / std::max(m2, 0.25)), 2);
    return std::sqrt(t1 + t2);
}

namespace {

ComparisonReport compare_impl(const Eigen::Ref<const ArrayXd>& sim,
                              const Eigen::Ref<const ArrayXd>& ref,
                              const ArrayXd& sigma, double total, double bin_width,
                              const CompareOptions& opts) {
    if (sim.size() != ref.size())
        throw std::invalid_argument("compare: profiles must share one bin grid");
    ComparisonReport r;
    r.residuals = sim - ref;
    const double peak = ref.maxCoeff();
    const double cut = opts.core_fraction * peak;
    r.core = ref > cut;
    r.z = ArrayXd::Zero(sim.size());
    const double sigma_floor = opts.count_floor / (total * bin_width);
    double sum_res2 = 0.0, sum_ref2 = 0.0;
    for (Eigen::Index i = 0; i < sim.size(); ++i) {
        if (!r.core[i]) continue;
        ++r.core_bins;
        const double res = r.residuals[i];
        sum_res2 += res * res;
        sum_ref2 += ref[i] * ref[i];
        r.linf = std::max(r.linf, std::abs(res));
        const double s = std::max(sigma[i], sigma_floor);
        r.z[i] = res / s;
        r.chi2 += r.z[i] * r.z[i];
        if (std::abs(r.z[i]) > opts.z_threshold) ++r.z_exceedances;
    }
    r.l2_abs = std::sqrt(sum_res2);
    r.l2_rel = sum_ref2 > 0.0 ? std::sqrt(sum_res2 / sum_ref2) : 0.0;
    r.z_exceed_fraction =
        r.core_bins > 0 ? static_cast<double>(r.z_exceedances) / static_cast<double>(r.core_bins) : 0.0;
    return r;
}

} // namespace

ComparisonReport compare(const Eigen::Ref<const ArrayXd>& sim_density,
                         const Eigen::Ref<const ArrayXd>& ref_density,
                         const Eigen::Ref<const ArrayXd>& expected_raw_density,
                         double total_particles, double bin_width, const CompareOptions& opts) {
    const ArrayXd sigma =
        (expected_raw_density.max(0.0) / (total_particles * bin_width)).sqrt();
    return compare_impl(sim_density, ref_density, sigma, total_particles, bin_width, opts);
}

ComparisonReport compare_with_sigma(const Eigen::Ref<const ArrayXd>& sim_density,
                                    const Eigen::Ref<const ArrayXd>& ref_density,
                                    const Eigen::Ref<const ArrayXd>& sigma_density,
                                    double total_particles, double bin_width,
                                    const CompareOptions& opts) {
    return compare_impl(sim_density, ref_density, sigma_density, total_particles, bin_width, opts);
}

} // namespace phasemc
