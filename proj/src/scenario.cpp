#include "phasemc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace phasemc {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-index particle factories. Sampling is addressed purely by particle
// index, so any execution order reproduces the same stream.

Particle make_single(const ScenarioConfig& cfg, const IndexedRng& rng, std::uint64_t i) {
    Particle p;
    p.x_origin = cfg.x0;
    p.v = rng.normal(i, cfg.v0, cfg.sigma_v);
    p.phi0 = cfg.phi0;
    p.channel = 0;
    return p;
}

Particle make_two(const ScenarioConfig& cfg, const IndexedRng& rng, std::uint64_t i) {
    Particle p;
    const bool second = (i & 1ull) != 0;
    p.x_origin = second ? cfg.x2 : cfg.x1;
    p.v = rng.normal(i, second ? -cfg.v0 : cfg.v0, cfg.sigma_v);
    p.phi0 = cfg.phi0;
    p.channel = second ? 1u : 0u;
    return p;
}

template <typename RecordFn>
void parallel_over_particles(const ScenarioConfig& cfg, std::uint64_t count, RecordFn&& fn,
                             std::vector<DetectorArray>& out) {
    const int workers = cfg.resolved_threads();
    if (workers <= 1 || count < 10000) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i, out);
        return;
    }
    std::vector<std::vector<DetectorArray>> partials;
    partials.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        std::vector<DetectorArray> mine;
        mine.reserve(out.size());
        for (const auto& d : out)
            mine.emplace_back(d.x_min(), d.x_max(), d.bin_width(), d.channel_count(),
                              d.snapshot_time());
        partials.push_back(std::move(mine));
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t chunk = (count + static_cast<std::uint64_t>(workers) - 1) /
                                static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t hi = std::min(count, lo + chunk);
            for (std::uint64_t i = lo; i < hi; ++i) fn(i, partials[static_cast<std::size_t>(w)]);
        });
    }
    for (auto& th : pool) th.join();
    // merge in worker order: same worker count -> bitwise identical sums
    for (int w = 0; w < workers; ++w)
        for (std::size_t s = 0; s < out.size(); ++s)
            out[s].merge(partials[static_cast<std::size_t>(w)][s]);
}

std::vector<DetectorArray> fresh_arrays(const ScenarioConfig& cfg, int channels) {
    std::vector<DetectorArray> out;
    out.reserve(cfg.snapshot_times.size());
    for (const double t : cfg.snapshot_times)
        out.emplace_back(cfg.x_min, cfg.x_max, cfg.bin_width, channels, t);
    return out;
}

void validate_massive(const ScenarioConfig& cfg) {
    if (cfg.particles < 1) throw std::invalid_argument("scenario: particle budget must be >= 1");
    if (!(cfg.bin_width > 0.0)) throw std::invalid_argument("scenario: bin_width must be > 0");
    if (cfg.snapshot_times.empty())
        throw std::invalid_argument("scenario: need at least one snapshot time");
    for (const double t : cfg.snapshot_times)
        if (!(t > 0.0)) throw std::invalid_argument("scenario: snapshot times must be > 0");
}

} // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::single_packet: return "single_packet";
        case ScenarioKind::two_packets: return "two_packets";
        case ScenarioKind::wall: return "wall";
        case ScenarioKind::double_slit: return "double_slit";
    }
    return "unknown";
}

int ScenarioConfig::resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

std::vector<DetectorArray> run_single_packet(const ScenarioConfig& cfg) {
    validate_massive(cfg);
    auto arrays = fresh_arrays(cfg, 1);
    const IndexedRng rng(cfg.seed);
    const auto& times = cfg.snapshot_times;
    parallel_over_particles(
        cfg, cfg.particles,
        [&](std::uint64_t i, std::vector<DetectorArray>& dets) {
            const Particle p = make_single(cfg, rng, i);
            for (std::size_t s = 0; s < times.size(); ++s)
                dets[s].record(position_free(p, times[s]), phase_free(p, times[s]), p.channel);
        },
        arrays);
    return arrays;
}

std::vector<DetectorArray> run_two_packets(const ScenarioConfig& cfg) {
    validate_massive(cfg);
    auto arrays = fresh_arrays(cfg, 2);
    const IndexedRng rng(cfg.seed);
    const auto& times = cfg.snapshot_times;
    parallel_over_particles(
        cfg, cfg.particles,
        [&](std::uint64_t i, std::vector<DetectorArray>& dets) {
            const Particle p = make_two(cfg, rng, i);
            for (std::size_t s = 0; s < times.size(); ++s)
                dets[s].record(position_free(p, times[s]), phase_free(p, times[s]), p.channel);
        },
        arrays);
    return arrays;
}

std::vector<DetectorArray> run_wall(const ScenarioConfig& cfg) {
    validate_massive(cfg);
    if (!(cfg.x0 < cfg.wall_x))
        throw std::invalid_argument("scenario: wall source must sit below the wall");
    auto arrays = fresh_arrays(cfg, 2);
    const IndexedRng rng(cfg.seed);
    const auto& times = cfg.snapshot_times;
    parallel_over_particles(
        cfg, cfg.particles,
        [&](std::uint64_t i, std::vector<DetectorArray>& dets) {
            const Particle p = make_single(cfg, rng, i);
            for (std::size_t s = 0; s < times.size(); ++s) {
                const WallState w = evolve_with_wall(p, times[s], cfg.wall_x);
                dets[s].record(w.position, w.phase, w.channel);
            }
        },
        arrays);
    return arrays;
}

double double_slit_fringe_period(const ScenarioConfig& cfg) {
    return cfg.photon.wavelength * cfg.photon.screen_distance / cfg.photon.slit_separation;
}

DoubleSlitResult run_double_slit(const ScenarioConfig& cfg) {
    if (cfg.particles < 1) throw std::invalid_argument("scenario: photon budget must be >= 1");
    if (cfg.segments < 1) throw std::invalid_argument("scenario: need at least one segment");
    const double ratio = cfg.photon.screen_distance / cfg.photon.slit_separation;
    if (ratio < cfg.min_screen_slit_ratio)
        throw std::invalid_argument("scenario: double slit requires screen_distance >> slit_separation");
    const double span = cfg.segment_width * cfg.segments;
    const auto per_segment = static_cast<int>(std::round(cfg.segment_width / cfg.pixel_width));
    if (per_segment < 1 || std::abs(per_segment * cfg.pixel_width - cfg.segment_width) > 1e-12 * cfg.segment_width)
        throw std::invalid_argument("scenario: segment_width must be a multiple of pixel_width");

    std::vector<DetectorArray> screen;
    screen.emplace_back(-span / 2.0, span / 2.0, cfg.pixel_width, 2, 0.0);
    const IndexedRng rng(cfg.seed);
    const double l = cfg.photon.screen_distance;
    const double d_half = cfg.photon.slit_separation / 2.0;
    parallel_over_particles(
        cfg, cfg.particles,
        [&](std::uint64_t i, std::vector<DetectorArray>& dets) {
            auto& det = dets[0];
            const bool second = (i & 1ull) != 0;
            const double slit_x = second ? d_half : -d_half;
            const double angle = rng.uniform(i, -cfg.emission_half_angle, cfg.emission_half_angle);
            const double landing = slit_x + l * std::tan(angle);
            if (landing < det.x_min() || landing >= det.x_max()) {
                det.record(landing, 0.0, second ? 1u : 0u); // overflow tally
                return;
            }
            const auto pixel = static_cast<Eigen::Index>(
                std::floor((landing - det.x_min()) / det.bin_width()));
            const double cx = det.bin_center(pixel);
            const double path = std::hypot(l, cx - slit_x);
            det.record(cx, photon_phase(path, cfg.photon.wavelength), second ? 1u : 0u);
        },
        screen);

    DoubleSlitResult out{std::move(screen.front()), per_segment, {}, {}, {}};
    const auto nseg = static_cast<Eigen::Index>(cfg.segments);
    out.segment_centers.resize(nseg);
    out.segment_recorded = ArrayXd::Zero(nseg);
    out.segment_raw = ArrayXd::Zero(nseg);
    const ArrayXd nbar = out.pixels.recorded_counts();
    const ArrayXd raw = out.pixels.raw_counts();
    for (Eigen::Index s = 0; s < nseg; ++s) {
        out.segment_centers[s] = out.pixels.x_min() + (static_cast<double>(s) + 0.5) * cfg.segment_width;
        for (int j = 0; j < per_segment; ++j) {
            const Eigen::Index pix = s * per_segment + j;
            out.segment_recorded[s] += nbar[pix];
            out.segment_raw[s] += raw[pix];
        }
    }
    return out;
}

ArrayXd double_slit_expected_density(const ScenarioConfig& cfg,
                                     const Eigen::Ref<const ArrayXd>& pixel_centers) {
    const double l = cfg.photon.screen_distance;
    const double d_half = cfg.photon.slit_separation / 2.0;
    const double lambda = cfg.photon.wavelength;
    ArrayXd out(pixel_centers.size());
    for (Eigen::Index i = 0; i < pixel_centers.size(); ++i) {
        const double x = pixel_centers[i];
        const double u1 = x + d_half, u2 = x - d_half;
        // per-photon angular flux of each slit mapped to the screen
        const double f1 = 0.5 * l / (l * l + u1 * u1) / (2.0 * cfg.emission_half_angle);
        const double f2 = 0.5 * l / (l * l + u2 * u2) / (2.0 * cfg.emission_half_angle);
        const double r1 = std::hypot(l, u1), r2 = std::hypot(l, u2);
        const double dphi = 2.0 * kPi * (r2 - r1) / lambda;
        out[i] = f1 + f2 + 2.0 * std::sqrt(f1 * f2) * std::cos(dphi);
    }
    return out;
}

std::vector<BuildupPoint> run_buildup(const ScenarioConfig& cfg,
                                      const std::vector<std::uint64_t>& checkpoints) {
    validate_massive(cfg);
    if (cfg.kind == ScenarioKind::double_slit)
        throw std::invalid_argument("run_buildup: use run_double_slit_buildup for photons");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("run_buildup: checkpoints must ascend");
    if (!checkpoints.empty() && checkpoints.back() > cfg.particles)
        throw std::invalid_argument("run_buildup: checkpoint exceeds the particle budget");

    const int channels = cfg.kind == ScenarioKind::single_packet ? 1 : 2;
    auto arrays = fresh_arrays(cfg, channels);
    const IndexedRng rng(cfg.seed);
    const auto& times = cfg.snapshot_times;

    const auto record_one = [&](std::uint64_t i) {
        switch (cfg.kind) {
            case ScenarioKind::single_packet: {
                const Particle p = make_single(cfg, rng, i);
                for (std::size_t s = 0; s < times.size(); ++s)
                    arrays[s].record(position_free(p, times[s]), phase_free(p, times[s]), p.channel);
                break;
            }
            case ScenarioKind::two_packets: {
                const Particle p = make_two(cfg, rng, i);
                for (std::size_t s = 0; s < times.size(); ++s)
                    arrays[s].record(position_free(p, times[s]), phase_free(p, times[s]), p.channel);
                break;
            }
            case ScenarioKind::wall: {
                const Particle p = make_single(cfg, rng, i);
                for (std::size_t s = 0; s < times.size(); ++s) {
                    const WallState w = evolve_with_wall(p, times[s], cfg.wall_x);
                    arrays[s].record(w.position, w.phase, w.channel);
                }
                break;
            }
            default: break;
        }
    };

    std::vector<BuildupPoint> out;
    out.reserve(checkpoints.size());
    std::uint64_t next = 0;
    for (const std::uint64_t m : checkpoints) {
        for (; next < m; ++next) record_one(next);
        BuildupPoint point;
        point.m = m;
        const double denom = std::max<std::uint64_t>(m, 1);
        for (const auto& det : arrays) point.profiles.push_back(det.density_profile(static_cast<double>(denom)));
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<SlitBuildupPoint> run_double_slit_buildup(const ScenarioConfig& cfg,
                                                      const std::vector<std::uint64_t>& checkpoints) {
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("buildup: checkpoints must ascend");
    if (!checkpoints.empty() && checkpoints.back() > cfg.particles)
        throw std::invalid_argument("buildup: checkpoint exceeds the photon budget");
    std::vector<SlitBuildupPoint> out;
    out.reserve(checkpoints.size());
    for (const std::uint64_t m : checkpoints) {
        ScenarioConfig partial = cfg;
        partial.particles = std::max<std::uint64_t>(m, 1);
        DoubleSlitResult r = run_double_slit(partial);
        SlitBuildupPoint point;
        point.m = m;
        point.segment_centers = r.segment_centers;
        point.segment_recorded = m == 0 ? ArrayXd::Zero(r.segment_recorded.size()) : r.segment_recorded;
        point.segment_raw = m == 0 ? ArrayXd::Zero(r.segment_raw.size()) : r.segment_raw;
        point.pixel_profile = r.pixels.density_profile(static_cast<double>(std::max<std::uint64_t>(m, 1)));
        if (m == 0) {
            point.pixel_profile.raw_counts.setZero();
            point.pixel_profile.raw_density.setZero();
            point.pixel_profile.recorded_counts.setZero();
            point.pixel_profile.recorded_density.setZero();
        }
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<DetectorArray> sweep_bin_size(const ScenarioConfig& cfg,
                                          const std::vector<double>& bin_widths,
                                          double snapshot_time) {
    validate_massive(cfg);
    if (bin_widths.empty()) throw std::invalid_argument("sweep: need at least one bin width");
    const int channels = cfg.kind == ScenarioKind::single_packet ? 1 : 2;
    std::vector<DetectorArray> arrays;
    arrays.reserve(bin_widths.size());
    for (const double w : bin_widths) {
        if (!(w > 0.0)) throw std::invalid_argument("sweep: bin widths must be > 0");
        arrays.emplace_back(cfg.x_min, cfg.x_max, w, channels, snapshot_time);
    }
    const IndexedRng rng(cfg.seed);
    parallel_over_particles(
        cfg, cfg.particles,
        [&](std::uint64_t i, std::vector<DetectorArray>& dets) {
            switch (cfg.kind) {
                case ScenarioKind::single_packet: {
                    const Particle p = make_single(cfg, rng, i);
                    const double x = position_free(p, snapshot_time);
                    const double phi = phase_free(p, snapshot_time);
                    for (auto& det : dets) det.record(x, phi, p.channel);
                    break;
                }
                case ScenarioKind::two_packets: {
                    const Particle p = make_two(cfg, rng, i);
                    const double x = position_free(p, snapshot_time);
                    const double phi = phase_free(p, snapshot_time);
                    for (auto& det : dets) det.record(x, phi, p.channel);
                    break;
                }
                case ScenarioKind::wall: {
                    const Particle p = make_single(cfg, rng, i);
                    const WallState w = evolve_with_wall(p, snapshot_time, cfg.wall_x);
                    for (auto& det : dets) det.record(w.position, w.phase, w.channel);
                    break;
                }
                default:
                    throw std::invalid_argument("sweep: double_slit has no time sweep");
            }
        },
        arrays);
    return arrays;
}

bool budget_conserved(const DetectorArray& det, std::uint64_t emitted) {
    return det.binned() + det.overflow() + det.rejected() == static_cast<std::int64_t>(emitted);
}

} // namespace phasemc
