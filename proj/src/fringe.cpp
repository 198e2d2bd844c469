#include "phasemc/fringe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace phasemc {

namespace {

constexpr double kPi = std::numbers::pi;

// Cubic B-spline kernel, support |u| < 2, unit partition over integer shifts.
double bspline3(double u) {
    u = std::abs(u);
    if (u >= 2.0) return 0.0;
    if (u >= 1.0) {
        const double w = 2.0 - u;
        return w * w * w / 6.0;
    }
    return (4.0 - 6.0 * u * u + 3.0 * u * u * u) / 6.0;
}

double grid_step(const Eigen::Ref<const ArrayXd>& centers) {
    if (centers.size() < 2) throw std::invalid_argument("fringe: need at least two bins");
    return centers[1] - centers[0];
}

} // namespace

double bspline_reconstruct(const Eigen::Ref<const ArrayXd>& centers,
                           const Eigen::Ref<const ArrayXd>& values, double x) {
    const double dx = grid_step(centers);
    const double pos = (x - centers[0]) / dx;
    const auto base = static_cast<Eigen::Index>(std::floor(pos));
    double acc = 0.0;
    for (Eigen::Index j = base - 1; j <= base + 2; ++j) {
        if (j < 0 || j >= centers.size()) continue;
        acc += values[j] * bspline3(pos - static_cast<double>(j));
    }
    return acc;
}

double fringe_visibility(const Eigen::Ref<const ArrayXd>& centers,
                         const Eigen::Ref<const ArrayXd>& density, double lo, double hi,
                         double period) {
    if (!(period > 0.0) || !(hi > lo)) return 0.0;
    const double step = period / 64.0;
    const auto n = static_cast<long>(std::floor((hi - lo) / step));
    if (n < 8) return 0.0;
    Complex demod{0.0, 0.0};
    double dc = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double x = lo + step * static_cast<double>(i);
        const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
        const double rho = bspline_reconstruct(centers, density, x);
        const double arg = -2.0 * kPi * x / period;
        demod += w * rho * Complex{std::cos(arg), std::sin(arg)};
        dc += w * rho;
    }
    if (dc <= 0.0) return 0.0;
    return 2.0 * std::abs(demod) / dc;
}

double fringe_spacing(const Eigen::Ref<const ArrayXd>& centers,
                      const Eigen::Ref<const ArrayXd>& density, double lo, double hi,
                      double expected_period) {
    if (!(expected_period > 0.0) || !(hi > lo)) return 0.0;
    const double sigma = expected_period / 8.0;
    const double step = expected_period / 100.0;
    const auto n = static_cast<long>(std::floor((hi - lo) / step));
    if (n < 10) return 0.0;

    // Gaussian smoothing of the reconstructed curve.
    std::vector<double> smooth(static_cast<std::size_t>(n + 1));
    const int half = static_cast<int>(std::ceil(4.0 * sigma / step));
    std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
    double ksum = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double u = static_cast<double>(k) * step / sigma;
        kernel[static_cast<std::size_t>(k + half)] = std::exp(-0.5 * u * u);
        ksum += kernel[static_cast<std::size_t>(k + half)];
    }
    for (auto& k : kernel) k /= ksum;
    for (long i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (int k = -half; k <= half; ++k) {
            const double x = lo + step * static_cast<double>(i) + step * static_cast<double>(k);
            acc += kernel[static_cast<std::size_t>(k + half)] * bspline_reconstruct(centers, density, x);
        }
        smooth[static_cast<std::size_t>(i)] = acc;
    }

    double peak = 0.0;
    for (const double v : smooth) peak = std::max(peak, v);
    const double floor = 0.1 * peak;

    std::vector<double> maxima;
    for (long i = 1; i < n; ++i) {
        const double a = smooth[static_cast<std::size_t>(i - 1)];
        const double b = smooth[static_cast<std::size_t>(i)];
        const double c = smooth[static_cast<std::size_t>(i + 1)];
        if (b <= floor || b < a || b <= c) continue;
        // parabolic refinement around the sample maximum
        const double denom = a - 2.0 * b + c;
        const double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
        maxima.push_back(lo + step * (static_cast<double>(i) + shift));
    }
    if (maxima.size() < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < maxima.size(); ++i) acc += maxima[i] - maxima[i - 1];
    return acc / static_cast<double>(maxima.size() - 1);
}

} // namespace phasemc
