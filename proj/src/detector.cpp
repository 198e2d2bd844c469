#include "phasemc/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace phasemc {

Complex finalize_bin(const DetectionBin& bin) {
    Complex psi{0.0, 0.0};
    for (const auto& ch : bin.channels)
        if (ch.count > 0) psi += ch.sum / std::sqrt(static_cast<double>(ch.count));
    return psi;
}

double recorded_count(const DetectionBin& bin) {
    return std::norm(finalize_bin(bin));
}

DetectorArray::DetectorArray(double x_min, double x_max, double bin_width, int channels,
                             double snapshot_time)
    : x_min_(x_min), x_max_(x_max), bin_width_(bin_width), snapshot_time_(snapshot_time) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("detector: bin_width must be > 0");
    if (!(x_max > x_min)) throw std::invalid_argument("detector: x_max must exceed x_min");
    if (channels < 1) throw std::invalid_argument("detector: need at least one channel");
    const auto bins = static_cast<Eigen::Index>(std::ceil((x_max - x_min) / bin_width));
    sums_ = ArrayXXcd::Zero(channels, bins);
    counts_ = ArrayXXi64::Zero(channels, bins);
}

void DetectorArray::record(double x, double phase, std::uint32_t channel) {
    if (!std::isfinite(x) || !std::isfinite(phase)) {
        ++rejected_;
        return;
    }
    if (x < x_min_) {
        ++overflow_low_;
        return;
    }
    auto i = static_cast<Eigen::Index>(std::floor((x - x_min_) / bin_width_));
    if (x >= x_max_ || i >= bin_count()) {
        ++overflow_high_;
        return;
    }
    sums_(channel, i) += Complex{std::cos(phase), std::sin(phase)};
    counts_(channel, i) += 1;
}

void DetectorArray::merge(const DetectorArray& other) {
    const bool same = x_min_ == other.x_min_ && x_max_ == other.x_max_ &&
                      bin_width_ == other.bin_width_ &&
                      snapshot_time_ == other.snapshot_time_ &&
                      counts_.rows() == other.counts_.rows() &&
                      counts_.cols() == other.counts_.cols();
    if (!same) throw std::invalid_argument("detector merge: geometry mismatch");
    sums_ += other.sums_;
    counts_ += other.counts_;
    overflow_low_ += other.overflow_low_;
    overflow_high_ += other.overflow_high_;
    rejected_ += other.rejected_;
}

DetectorArray merge(const DetectorArray& a, const DetectorArray& b) {
    DetectorArray out = a;
    out.merge(b);
    return out;
}

DetectionBin DetectorArray::bin(Eigen::Index i) const {
    DetectionBin out;
    out.center = bin_center(i);
    out.width = bin_width_;
    out.channels.resize(static_cast<std::size_t>(counts_.rows()));
    for (Eigen::Index k = 0; k < counts_.rows(); ++k) {
        out.channels[static_cast<std::size_t>(k)] = {sums_(k, i), counts_(k, i)};
    }
    return out;
}

ArrayXd DetectorArray::recorded_counts() const {
    const Eigen::Index bins = bin_count();
    ArrayXd nbar = ArrayXd::Zero(bins);
    for (Eigen::Index i = 0; i < bins; ++i) {
        Complex psi{0.0, 0.0};
        for (Eigen::Index k = 0; k < counts_.rows(); ++k)
            if (counts_(k, i) > 0)
                psi += sums_(k, i) / std::sqrt(static_cast<double>(counts_(k, i)));
        nbar[i] = std::norm(psi);
    }
    return nbar;
}

ArrayXd DetectorArray::raw_counts() const {
    return counts_.colwise().sum().cast<double>().transpose();
}

ArrayXd DetectorArray::bin_centers() const {
    const Eigen::Index bins = bin_count();
    return x_min_ + (ArrayXd::LinSpaced(bins, 0.0, static_cast<double>(bins - 1)) + 0.5) * bin_width_;
}

DensityProfile DetectorArray::density_profile(double total_particles) const {
    if (!(total_particles > 0.0))
        throw std::invalid_argument("density_profile: total_particles must be > 0");
    DensityProfile p;
    p.centers = bin_centers();
    p.raw_counts = raw_counts();
    p.recorded_counts = recorded_counts();
    const double norm = 1.0 / (total_particles * bin_width_);
    p.raw_density = p.raw_counts * norm;
    p.recorded_density = p.recorded_counts * norm;
    p.bin_width = bin_width_;
    p.snapshot_time = snapshot_time_;
    return p;
}

} // namespace phasemc
