#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phasemc/reference.hpp"
#include "phasemc/scenario.hpp"

namespace phasemc {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to reproduce and audit one run: the canonical config
/// echo (re-parseable), seed, code version, every emitted file, wall-clock
/// timings, and the per-snapshot accounting tallies.
struct RunManifest {
    std::string config_text;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::vector<std::string> files;
    double wall_seconds = 0.0;
    struct SnapshotStats {
        double t = 0.0;
        std::int64_t binned = 0;
        std::int64_t overflow = 0;
        std::int64_t rejected = 0;
        bool overflow_warning = false;
    };
    std::vector<SnapshotStats> stats;
};

/// Writes one snapshot profile as delimited text with a config-echo header.
/// Columns: bin_center, raw_count, raw_density, recorded_count,
/// recorded_density, ref_exact_density, ref_approx_density.
void write_profile(const std::filesystem::path& file, const ScenarioConfig& cfg,
                   const DetectorArray& det, const Eigen::Ref<const ArrayXd>& ref_exact,
                   const Eigen::Ref<const ArrayXd>& ref_approx);

/// Reference curves evaluated on the detector grid of one snapshot.
struct ReferenceCurves {
    ArrayXd exact;        ///< density
    ArrayXd approx;       ///< density
    ArrayXd expected_raw; ///< fringe-free raw-count expectation (density)
};
ReferenceCurves reference_curves(const ScenarioConfig& cfg, const DetectorArray& det);

/// Executes the configured scenario and writes one profile file per
/// snapshot, a comparison report, and the manifest, into `out_dir`.
/// Exit-code contract of the CLI: ConfigError -> 1, anything else -> 2.
RunManifest run_and_write(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Bin-size sweep at a fixed snapshot time: one profile per bin width on the
/// identical particle stream, plus a summary of recorded totals and fringe
/// visibilities demonstrating the coarse-bin undercount.
RunManifest sweep_bin_size_and_write(const ScenarioConfig& cfg, const std::vector<double>& widths,
                                     double snapshot_time, const std::filesystem::path& out_dir);

/// Buildup sweep: profiles after the first m particles for each checkpoint.
RunManifest sweep_buildup_and_write(const ScenarioConfig& cfg,
                                    const std::vector<std::uint64_t>& checkpoints,
                                    const std::filesystem::path& out_dir);

/// Reads back the integer count columns (raw_count, recorded_count is real;
/// raw only) of a profile file; used by determinism checks.
std::vector<std::string> read_count_column(const std::filesystem::path& file);

} // namespace phasemc
