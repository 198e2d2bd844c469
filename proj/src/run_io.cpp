#include "phasemc/run_io.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "phasemc/config.hpp"
#include "phasemc/fringe.hpp"

namespace phasemc {

namespace {

using nlohmann::json;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string time_tag(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    return out;
}

void write_header(std::ofstream& out, const ScenarioConfig& cfg, double t) {
    out << "# recorded/raw particle profile\n";
    out << "# snapshot_time = " << fmt_g(t) << "\n";
    out << "# config:\n";
    std::istringstream echo(emit_config(cfg));
    std::string line;
    while (std::getline(echo, line)) out << "#   " << line << "\n";
    out << "# columns: bin_center raw_count raw_density recorded_count recorded_density"
           " ref_exact_density ref_approx_density\n";
    out << "# units: positions/densities in internal units for massive scenarios,"
           " meters for double_slit\n";
}

json stats_json(const RunManifest::SnapshotStats& s) {
    return json{{"t", s.t},
                {"binned", s.binned},
                {"overflow", s.overflow},
                {"rejected", s.rejected},
                {"overflow_warning", s.overflow_warning}};
}

RunManifest::SnapshotStats collect_stats(const ScenarioConfig& cfg, const DetectorArray& det) {
    RunManifest::SnapshotStats s;
    s.t = det.snapshot_time();
    s.binned = det.binned();
    s.overflow = det.overflow();
    s.rejected = det.rejected();
    s.overflow_warning = s.overflow > static_cast<std::int64_t>(cfg.particles / 10);
    if (s.overflow_warning)
        std::cerr << "warning: snapshot t=" << time_tag(s.t) << " sent "
                  << s.overflow << " of " << cfg.particles << " particles to overflow\n";
    return s;
}

void write_manifest(const std::filesystem::path& out_dir, const RunManifest& m) {
    json j{{"version", m.version},
           {"seed", m.seed},
           {"config", m.config_text},
           {"wall_seconds", m.wall_seconds},
           {"files", m.files}};
    j["snapshots"] = json::array();
    for (const auto& s : m.stats) j["snapshots"].push_back(stats_json(s));
    auto out = open_out(out_dir / "manifest.json");
    out << j.dump(2) << "\n";
}

} // namespace

void write_profile(const std::filesystem::path& file, const ScenarioConfig& cfg,
                   const DetectorArray& det, const Eigen::Ref<const ArrayXd>& ref_exact,
                   const Eigen::Ref<const ArrayXd>& ref_approx) {
    auto out = open_out(file);
    write_header(out, cfg, det.snapshot_time());
    const DensityProfile p = det.density_profile(static_cast<double>(cfg.particles));
    for (Eigen::Index i = 0; i < p.centers.size(); ++i) {
        out << fmt_g(p.centers[i]) << ' ' << static_cast<std::int64_t>(p.raw_counts[i]) << ' '
            << fmt_g(p.raw_density[i]) << ' ' << fmt_g(p.recorded_counts[i]) << ' '
            << fmt_g(p.recorded_density[i]) << ' ' << fmt_g(ref_exact[i]) << ' '
            << fmt_g(ref_approx[i]) << '\n';
    }
}

ReferenceCurves reference_curves(const ScenarioConfig& cfg, const DetectorArray& det) {
    ReferenceCurves r;
    const ArrayXd x = det.bin_centers();
    const double t = det.snapshot_time();
    const double dx = det.bin_width();
    switch (cfg.kind) {
        case ScenarioKind::single_packet: {
            const PacketParams p{cfg.x0, cfg.v0, 0.5};
            r.exact = gaussian_packet_density(x, t, p);
            r.approx = density_single_approx(x, t, p, dx) / dx;
            r.expected_raw = r.approx;
            break;
        }
        case ScenarioKind::two_packets: {
            const TwoPacketParams p{cfg.x1, cfg.x2, cfg.v0, 0.5};
            r.exact = psi_two_exact(x, t, p).abs2();
            r.approx = density_two_approx(x, t, p, dx) / dx;
            // fringe-free mixture with the Monte Carlo spread sigma_x = t
            const ArrayXd d1 = x - cfg.x1 - cfg.v0 * t;
            const ArrayXd d2 = x - cfg.x2 + cfg.v0 * t;
            const double norm = 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi) * t);
            r.expected_raw = norm * ((-(d1 * d1) / (2.0 * t * t)).exp() +
                                     (-(d2 * d2) / (2.0 * t * t)).exp());
            break;
        }
        case ScenarioKind::wall: {
            const WallParams p{cfg.x0, cfg.v0, 0.5, cfg.wall_x};
            r.exact = density_wall_image(x, t, p);
            r.approx = density_wall_approx(x, t, p, dx) / dx;
            const ArrayXd d1 = x - cfg.x0 - cfg.v0 * t;
            const ArrayXd d2 = (x - cfg.wall_x) + (cfg.x0 - cfg.wall_x) + cfg.v0 * t;
            const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * t);
            r.expected_raw = norm * ((-(d1 * d1) / (2.0 * t * t)).exp() +
                                     (-(d2 * d2) / (2.0 * t * t)).exp());
            break;
        }
        case ScenarioKind::double_slit: {
            r.exact = double_slit_expected_density(cfg, x);
            const double l = cfg.photon.screen_distance;
            const double d_half = cfg.photon.slit_separation / 2.0;
            r.expected_raw.resize(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                const double u1 = x[i] + d_half, u2 = x[i] - d_half;
                r.expected_raw[i] = (0.5 * l / (l * l + u1 * u1) +
                                     0.5 * l / (l * l + u2 * u2)) /
                                    (2.0 * cfg.emission_half_angle);
            }
            r.approx = r.expected_raw;
            break;
        }
    }
    return r;
}

RunManifest run_and_write(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    RunManifest m;
    m.config_text = emit_config(cfg);
    m.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    json report;
    report["kind"] = to_string(cfg.kind);
    report["snapshots"] = json::array();

    if (cfg.kind == ScenarioKind::double_slit) {
        const DoubleSlitResult r = run_double_slit(cfg);
        const ReferenceCurves ref = reference_curves(cfg, r.pixels);
        const auto pixel_file = out_dir / "profile_double_slit_pixels.csv";
        write_profile(pixel_file, cfg, r.pixels, ref.exact, ref.approx);
        m.files.push_back(pixel_file.filename().string());
        const auto seg_file = out_dir / "profile_double_slit_segments.csv";
        {
            auto out = open_out(seg_file);
            out << "# double-slit segment histogram\n# columns: segment_center raw_count"
                   " recorded_count\n";
            for (Eigen::Index s = 0; s < r.segment_centers.size(); ++s)
                out << fmt_g(r.segment_centers[s]) << ' '
                    << static_cast<std::int64_t>(r.segment_raw[s]) << ' '
                    << fmt_g(r.segment_recorded[s]) << '\n';
        }
        m.files.push_back(seg_file.filename().string());
        m.stats.push_back(collect_stats(cfg, r.pixels));

        const double period = double_slit_fringe_period(cfg);
        const DensityProfile p = r.pixels.density_profile(static_cast<double>(cfg.particles));
        const double span = cfg.segment_width * cfg.segments;
        const double lo = -span / 2.0 * 0.85, hi = span / 2.0 * 0.85;
        json snap;
        snap["fringe_period_geometric"] = period;
        snap["fringe_spacing_measured"] = fringe_spacing(p.centers, p.recorded_density, lo, hi, period);
        snap["visibility_recorded"] = fringe_visibility(p.centers, p.recorded_density, lo, hi, period);
        snap["visibility_raw"] = fringe_visibility(p.centers, p.raw_density, lo, hi, period);
        report["snapshots"].push_back(snap);
    } else {
        std::vector<DetectorArray> dets;
        switch (cfg.kind) {
            case ScenarioKind::single_packet: dets = run_single_packet(cfg); break;
            case ScenarioKind::two_packets: dets = run_two_packets(cfg); break;
            case ScenarioKind::wall: dets = run_wall(cfg); break;
            default: break;
        }
        for (const auto& det : dets) {
            const ReferenceCurves ref = reference_curves(cfg, det);
            const auto file = out_dir / ("profile_t" + time_tag(det.snapshot_time()) + ".csv");
            write_profile(file, cfg, det, ref.exact, ref.approx);
            m.files.push_back(file.filename().string());
            m.stats.push_back(collect_stats(cfg, det));

            const DensityProfile p = det.density_profile(static_cast<double>(cfg.particles));
            const ComparisonReport c = compare(p.recorded_density, ref.exact, ref.expected_raw,
                                               static_cast<double>(cfg.particles), det.bin_width());
            json snap;
            snap["t"] = det.snapshot_time();
            snap["core_bins"] = c.core_bins;
            snap["l2_rel"] = c.l2_rel;
            snap["linf"] = c.linf;
            snap["chi2"] = c.chi2;
            snap["z_over_3_fraction"] = c.z_exceed_fraction;
            if (cfg.kind == ScenarioKind::two_packets) {
                const double mid = 0.5 * (cfg.x1 + cfg.x2);
                const double period = 2.0 * std::numbers::pi * det.snapshot_time() / (cfg.x2 - cfg.x1);
                snap["fringe_visibility_recorded"] = fringe_visibility(
                    p.centers, p.recorded_density, mid - 5.0, mid + 5.0, period);
                snap["fringe_visibility_raw"] = fringe_visibility(
                    p.centers, p.raw_density, mid - 5.0, mid + 5.0, period);
            }
            report["snapshots"].push_back(snap);
        }
    }

    const auto report_file = out_dir / "report.json";
    {
        auto out = open_out(report_file);
        out << report.dump(2) << "\n";
    }
    m.files.push_back(report_file.filename().string());
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, m);
    return m;
}

RunManifest sweep_bin_size_and_write(const ScenarioConfig& cfg, const std::vector<double>& widths,
                                     double snapshot_time, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    RunManifest m;
    m.config_text = emit_config(cfg);
    m.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    const auto dets = sweep_bin_size(cfg, widths, snapshot_time);
    json summary;
    summary["t"] = snapshot_time;
    summary["sweep"] = json::array();
    for (std::size_t i = 0; i < dets.size(); ++i) {
        const auto& det = dets[i];
        ScenarioConfig echo = cfg;
        echo.bin_width = widths[i];
        const ReferenceCurves ref = reference_curves(echo, det);
        const auto file = out_dir / ("sweep_dx" + time_tag(widths[i]) + ".csv");
        write_profile(file, echo, det, ref.exact, ref.approx);
        m.files.push_back(file.filename().string());
        m.stats.push_back(collect_stats(cfg, det));

        const DensityProfile p = det.density_profile(static_cast<double>(cfg.particles));
        json entry;
        entry["bin_width"] = widths[i];
        entry["total_recorded"] = p.recorded_counts.sum();
        entry["total_raw"] = p.raw_counts.sum();
        if (cfg.kind == ScenarioKind::two_packets) {
            const double mid = 0.5 * (cfg.x1 + cfg.x2);
            const double period = 2.0 * std::numbers::pi * snapshot_time / (cfg.x2 - cfg.x1);
            entry["fringe_visibility_recorded"] =
                fringe_visibility(p.centers, p.recorded_density, mid - 5.0, mid + 5.0, period);
        }
        summary["sweep"].push_back(entry);
    }
    {
        auto out = open_out(out_dir / "sweep_summary.json");
        out << summary.dump(2) << "\n";
    }
    m.files.push_back("sweep_summary.json");
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, m);
    return m;
}

RunManifest sweep_buildup_and_write(const ScenarioConfig& cfg,
                                    const std::vector<std::uint64_t>& checkpoints,
                                    const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    RunManifest m;
    m.config_text = emit_config(cfg);
    m.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();

    json summary;
    summary["checkpoints"] = json::array();

    if (cfg.kind == ScenarioKind::double_slit) {
        const auto points = run_double_slit_buildup(cfg, checkpoints);
        const double period = double_slit_fringe_period(cfg);
        for (const auto& pt : points) {
            const auto file = out_dir / ("buildup_m" + std::to_string(pt.m) + "_segments.csv");
            auto out = open_out(file);
            out << "# double-slit segment histogram after first " << pt.m << " photons\n";
            out << "# columns: segment_center raw_count recorded_count\n";
            for (Eigen::Index s = 0; s < pt.segment_centers.size(); ++s)
                out << fmt_g(pt.segment_centers[s]) << ' '
                    << static_cast<std::int64_t>(pt.segment_raw[s]) << ' '
                    << fmt_g(pt.segment_recorded[s]) << '\n';
            m.files.push_back(file.filename().string());
            json entry;
            entry["m"] = pt.m;
            const double span = cfg.segment_width * cfg.segments;
            entry["visibility_recorded"] = fringe_visibility(
                pt.segment_centers, pt.segment_recorded, -span / 2.0 * 0.9, span / 2.0 * 0.9, period);
            summary["checkpoints"].push_back(entry);
        }
    } else {
        const auto points = run_buildup(cfg, checkpoints);
        for (const auto& pt : points) {
            json entry;
            entry["m"] = pt.m;
            for (const auto& p : pt.profiles) {
                const auto file = out_dir / ("buildup_m" + std::to_string(pt.m) + "_t" +
                                             time_tag(p.snapshot_time) + ".csv");
                auto out = open_out(file);
                out << "# profile after first " << pt.m << " particles, t = "
                    << time_tag(p.snapshot_time) << "\n";
                out << "# columns: bin_center raw_count raw_density recorded_count recorded_density\n";
                for (Eigen::Index i = 0; i < p.centers.size(); ++i)
                    out << fmt_g(p.centers[i]) << ' ' << static_cast<std::int64_t>(p.raw_counts[i])
                        << ' ' << fmt_g(p.raw_density[i]) << ' ' << fmt_g(p.recorded_counts[i])
                        << ' ' << fmt_g(p.recorded_density[i]) << '\n';
                m.files.push_back(file.filename().string());
                if (cfg.kind == ScenarioKind::two_packets) {
                    const double mid = 0.5 * (cfg.x1 + cfg.x2);
                    const double period =
                        2.0 * std::numbers::pi * p.snapshot_time / (cfg.x2 - cfg.x1);
                    entry["visibility_t" + time_tag(p.snapshot_time)] = fringe_visibility(
                        p.centers, p.recorded_density, mid - 5.0, mid + 5.0, period);
                }
            }
            summary["checkpoints"].push_back(entry);
        }
    }
    {
        auto out = open_out(out_dir / "buildup_summary.json");
        out << summary.dump(2) << "\n";
    }
    m.files.push_back("buildup_summary.json");
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, m);
    return m;
}

std::vector<std::string> read_count_column(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string center, count;
        row >> center >> count;
        out.push_back(count);
    }
    return out;
}

} // namespace phasemc
