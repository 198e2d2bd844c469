#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "phasemc/rng.hpp"

namespace phasemc {

/// Unit convention for the massive-particle scenarios.
///
/// All internal computations are dimensionless: velocities are measured in
/// units of the source velocity dispersion sigma_v, lengths in hbar/(m sigma_v),
/// times in hbar/(m sigma_v^2), so that hbar/m = sigma_v = 1 internally.
/// Conversions to physical units happen only at I/O boundaries. The photon
/// scenario is the exception: its geometry is carried in meters because the
/// phase 2*pi*l/lambda is scale-free.
namespace units {
inline constexpr double hbar_over_m = 1.0;
inline constexpr double sigma_v = 1.0;
} // namespace units

/// A classical free particle carrying phase information.
/// The velocity magnitude is conserved for the particle's whole life; only a
/// wall reflection flips its sign. `channel` tags the provenance class
/// (source index, direct/reflected, or slit index) that the detector
/// aggregates separately.
struct Particle {
    double x_origin = 0.0;
    double v = 0.0;
    double phi0 = 0.0;
    std::uint32_t channel = 0;
    bool reflected = false;
};

/// Gaussian velocity law for one source. `weight` is the fraction of the
/// total particle budget drawn from this source (1 for a lone source, 1/2
/// per source for the entangled pair).
struct VelocityDistribution {
    double mean = 0.0;
    double sigma = 1.0;
    double weight = 1.0;

    bool valid() const { return sigma >= 0.0 && weight > 0.0 && weight <= 1.0; }
};

/// Double-slit layout. All lengths in meters; the far-field condition
/// screen_distance >> slit_separation is enforced at config validation
/// (ratio >= min_ratio, default 100).
struct PhotonGeometry {
    double wavelength = 842e-9;
    double slit_separation = 250e-6;
    double screen_distance = 0.15;
};

/// Draws the velocity of particle `index` from `dist`.
/// Deterministic in (rng stream, index) regardless of evaluation order.
inline double sample_velocity(const VelocityDistribution& dist, const IndexedRng& rng,
                              std::uint64_t index) {
    return rng.normal(index, dist.mean, dist.sigma);
}

/// Free flight: x(t) = x_origin + v t.
inline double position_free(const Particle& p, double t) {
    return p.x_origin + p.v * t;
}

/// Action phase of a free trajectory at time t:
///   phi = (1/2) v^2 t + phi0,
/// which equals (x - x_origin)^2 / (2 t) + phi0 along the actual path.
/// t = 0 returns phi0.
inline double phase_free(const Particle& p, double t) {
    return 0.5 * p.v * p.v * t + p.phi0;
}

/// Result of evolving a particle against an infinitely high wall.
struct WallState {
    double position = 0.0;
    double phase = 0.0;
    std::uint32_t channel = 0; ///< 0 = direct, 1 = reflected
};

inline constexpr std::uint32_t kChannelDirect = 0;
inline constexpr std::uint32_t kChannelReflected = 1;

/// Evolves a particle emitted at x_origin < wall_x against a hard wall.
///
/// A particle moving toward the wall (v > 0) reflects at
/// t_hit = (wall_x - x_origin)/v; afterwards its position is mirrored about
/// the wall and its phase picks up an extra jump of pi. The speed is
/// unchanged, so the kinetic action is the same as for the free flight.
/// Particles moving away from the wall never reflect.
///
/// The returned position is always strictly below wall_x: a particle sitting
/// exactly on the wall is assigned to the reflected channel at the nearest
/// representable position below wall_x, which lands it in the bin adjacent
/// to the wall.
inline WallState evolve_with_wall(const Particle& p, double t, double wall_x = 0.0) {
    WallState out;
    const double free_pos = position_free(p, t);
    const bool hits = p.v > 0.0 && (wall_x - p.x_origin) <= p.v * t;
    if (!hits) {
        out.position = free_pos;
        out.phase = phase_free(p, t);
        out.channel = kChannelDirect;
        return out;
    }
    out.position = 2.0 * wall_x - free_pos;
    if (out.position >= wall_x) // landed exactly on the wall
        out.position = std::nextafter(wall_x, -INFINITY);
    out.phase = phase_free(p, t) + std::numbers::pi;
    out.channel = kChannelReflected;
    return out;
}

/// Photon phase after a straight flight of `path_length`:
///   phi = 2 pi path_length / wavelength.
/// (Massive particles accumulate half this rate at the same de Broglie
/// wavelength; both follow from energy x time once the photon energy h*nu
/// is inserted.)
inline double photon_phase(double path_length, double wavelength) {
    return 2.0 * std::numbers::pi * path_length / wavelength;
}

} // namespace phasemc
