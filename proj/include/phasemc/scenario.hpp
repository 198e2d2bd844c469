#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasemc/core.hpp"
#include "phasemc/detector.hpp"

namespace phasemc {

enum class ScenarioKind { single_packet, two_packets, wall, double_slit };

std::string to_string(ScenarioKind kind);

/// Full description of one experiment: which scenario, how many particles,
/// the detector grid, the snapshot times, and the per-kind physics knobs.
/// All massive-particle quantities are in internal units (hbar/m = sigma_v = 1);
/// the double-slit block is in meters.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::single_packet;
    std::uint64_t particles = 1'000'000;
    std::uint64_t seed = 12345;
    int threads = 0; ///< 0 = pick from hardware
    std::vector<double> snapshot_times = {0.1, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0};

    // detector grid (massive scenarios)
    double x_min = -10.0;
    double x_max = 90.0;
    double bin_width = 0.01;

    // shared physics
    double v0 = 5.0;
    double sigma_v = 1.0;
    double phi0 = -std::numbers::pi / 4.0;

    // single packet / wall
    double x0 = 0.0;

    // two packets
    double x1 = -20.0;
    double x2 = 20.0;

    // wall
    double wall_x = 0.0;

    // double slit (meters)
    PhotonGeometry photon;
    double pixel_width = 1e-6;
    double segment_width = 100e-6;
    int segments = 28;
    double emission_half_angle = 0.0102;
    double min_screen_slit_ratio = 100.0;

    int resolved_threads() const;
};

/// One free Gaussian source, all particles originating at x0.
/// Detector: K = 1 channel; recorded density converges to the spreading
/// Gaussian wavepacket density.
std::vector<DetectorArray> run_single_packet(const ScenarioConfig& cfg);

/// Two counter-propagating sources with the budget split equally
/// (even particle indices from x1 moving right, odd from x2 moving left).
/// Detector: K = 2 channels keyed by source.
std::vector<DetectorArray> run_two_packets(const ScenarioConfig& cfg);

/// One source at x0 < wall_x against a hard wall; channels = direct/reflected.
std::vector<DetectorArray> run_wall(const ScenarioConfig& cfg);

/// Double slit: photons alternate slits, draw a uniform emission angle in
/// the horizontal plane, fly straight to the detection line, and deposit the
/// phase 2 pi r / lambda where r is the slit -> pixel-center distance.
struct DoubleSlitResult {
    DetectorArray pixels;
    int pixels_per_segment = 0;
    ArrayXd segment_centers;
    ArrayXd segment_recorded; ///< sum of pixel N_bar per segment
    ArrayXd segment_raw;
};
DoubleSlitResult run_double_slit(const ScenarioConfig& cfg);

/// Expected pixel-level recorded density (per meter, unit emitted photon) of
/// the double slit, from the two-path phases at pixel centers and the exact
/// per-slit angular flux. Used as the reference curve.
ArrayXd double_slit_expected_density(const ScenarioConfig& cfg,
                                     const Eigen::Ref<const ArrayXd>& pixel_centers);
/// Geometric fringe period lambda * l / D.
double double_slit_fringe_period(const ScenarioConfig& cfg);

/// Profiles after the first m particles of the seed-deterministic order,
/// for each ascending checkpoint m (single pass, serial insertion order).
struct BuildupPoint {
    std::uint64_t m = 0;
    std::vector<DensityProfile> profiles; ///< one per snapshot time
};
std::vector<BuildupPoint> run_buildup(const ScenarioConfig& cfg,
                                      const std::vector<std::uint64_t>& checkpoints);

/// Double-slit buildup: segment histograms at each checkpoint.
struct SlitBuildupPoint {
    std::uint64_t m = 0;
    ArrayXd segment_centers;
    ArrayXd segment_recorded;
    ArrayXd segment_raw;
    DensityProfile pixel_profile;
};
std::vector<SlitBuildupPoint> run_double_slit_buildup(const ScenarioConfig& cfg,
                                                      const std::vector<std::uint64_t>& checkpoints);

/// Replays the identical particle stream into one detector per bin width at
/// a single snapshot time, so differences are attributable to binning alone.
std::vector<DetectorArray> sweep_bin_size(const ScenarioConfig& cfg,
                                          const std::vector<double>& bin_widths,
                                          double snapshot_time);

/// Emission-to-detection accounting for one snapshot: binned + overflow +
/// rejected must equal the emitted budget.
bool budget_conserved(const DetectorArray& det, std::uint64_t emitted);

} // namespace phasemc
