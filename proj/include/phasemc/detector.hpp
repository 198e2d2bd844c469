#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

namespace phasemc {

using ArrayXd = Eigen::ArrayXd;
using ArrayXcd = Eigen::ArrayXcd;
using ArrayXXcd = Eigen::ArrayXXcd;
using ArrayXXi64 = Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Complex = std::complex<double>;

/// Running phase aggregate of one direction channel inside one bin:
/// the complex sum of unit phasors e^{i phi_j} and how many went in.
/// |sum| <= count always (triangle inequality); count = 0 implies sum = 0.
struct ChannelAccumulator {
    Complex sum{0.0, 0.0};
    std::int64_t count = 0;
};

/// Read-only snapshot of one spatial bin with its K channel accumulators.
struct DetectionBin {
    double center = 0.0;
    double width = 0.0;
    std::vector<ChannelAccumulator> channels;
};

/// Aggregated phase sum of a bin:
///   Psi_bar = sum over channels k with count_k > 0 of sum_k / sqrt(count_k).
/// Channels that collected nothing contribute zero; an empty bin gives 0.
Complex finalize_bin(const DetectionBin& bin);

/// Announced occupancy of a bin: N_bar = |Psi_bar|^2. Reported as a real
/// number; it may be smaller, equal, or greater than the raw count.
double recorded_count(const DetectionBin& bin);

/// Normalized per-bin densities for one snapshot. `recorded_density` is the
/// phase-aggregated curve N_bar/(total * width); `raw_density` is the plain
/// histogram N/(total * width).
struct DensityProfile {
    ArrayXd centers;
    ArrayXd raw_counts;
    ArrayXd raw_density;
    ArrayXd recorded_counts;
    ArrayXd recorded_density;
    double bin_width = 0.0;
    double snapshot_time = 0.0;
};

/// Spatial grid of phase-collecting bins frozen at one snapshot time.
///
/// Bins tile [x_min, x_max) half-open without gaps; a position on a bin edge
/// belongs to the bin whose [left, right) interval contains it. Hits outside
/// the domain are tallied as overflow, never silently dropped; non-finite
/// inputs are rejected with a diagnostic count.
///
/// Single writer by design: parallel fills use one array per worker and
/// combine them with merge(). Finalization is read-only.
class DetectorArray {
public:
    DetectorArray(double x_min, double x_max, double bin_width, int channels,
                  double snapshot_time);

    /// Deposits e^{i phase} into the containing bin's channel accumulator.
    void record(double x, double phase, std::uint32_t channel);

    /// Elementwise accumulation of another array with identical geometry.
    /// Throws std::invalid_argument on any geometry mismatch.
    void merge(const DetectorArray& other);

    DetectionBin bin(Eigen::Index i) const;

    /// N_bar per bin (finalized, read-only).
    ArrayXd recorded_counts() const;
    /// Raw count per bin, summed over channels.
    ArrayXd raw_counts() const;

    /// Both normalized densities, for a stated emission budget.
    DensityProfile density_profile(double total_particles) const;

    Eigen::Index bin_count() const { return static_cast<Eigen::Index>(counts_.cols()); }
    int channel_count() const { return static_cast<int>(counts_.rows()); }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double bin_width() const { return bin_width_; }
    double snapshot_time() const { return snapshot_time_; }
    double bin_center(Eigen::Index i) const { return x_min_ + (static_cast<double>(i) + 0.5) * bin_width_; }
    ArrayXd bin_centers() const;

    std::int64_t overflow() const { return overflow_low_ + overflow_high_; }
    std::int64_t overflow_low() const { return overflow_low_; }
    std::int64_t overflow_high() const { return overflow_high_; }
    std::int64_t rejected() const { return rejected_; }
    /// Total record() calls accepted into bins.
    std::int64_t binned() const { return counts_.sum(); }

    const ArrayXXcd& channel_sums() const { return sums_; }
    const ArrayXXi64& channel_counts() const { return counts_; }

private:
    double x_min_;
    double x_max_;
    double bin_width_;
    double snapshot_time_;
    ArrayXXcd sums_;   // K x B
    ArrayXXi64 counts_; // K x B
    std::int64_t overflow_low_ = 0;
    std::int64_t overflow_high_ = 0;
    std::int64_t rejected_ = 0;
};

/// Geometry-checked out-of-place merge.
DetectorArray merge(const DetectorArray& a, const DetectorArray& b);

} // namespace phasemc
