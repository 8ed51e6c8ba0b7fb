#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "akepler/hamiltonians.hpp"
#include "akepler/integrator.hpp"

namespace akepler {

// A = p x (r x p) - m Q r / |r|. Points from the centre towards perigee.
Vec3 runge_lenz(const PhaseState& state, const KeplerParams& params);

Vec3 angular_momentum(const PhaseState& state);

// Below this |A| the apsis direction is treated as undefined.
inline constexpr double kApsisThreshold = 1e-9;

struct OrbitElements {
  double energy = 0.0;
  Vec3 angular_momentum = Vec3::Zero();
  Vec3 runge_lenz = Vec3::Zero();
  double eccentricity = 0.0;
  double semi_major = 0.0;
  double period = 0.0;

  // Throw DegenerateApsis for (near) circular orbits.
  Vec3 perigee_dir() const;
  Vec3 apogee_dir() const;
};

// Osculating Kepler elements of a bound state about the origin. Throws
// UnboundOrbit for E >= 0.
OrbitElements orbit_elements(const PhaseState& state,
                             const KeplerParams& params);

struct DipoleRotation {
  double cos_phi = 1.0;             // A_i-hat . A_f-hat, full 3D
  double phi_unsigned = 0.0;        // acos(cos_phi) in [0, pi]
  double signed_phi_in_plane = 0.0; // about `normal`, projections in (-pi, pi]
};

// Angle between two Runge-Lenz (or apsis) directions. The signed angle uses
// the projections onto the plane normal to `normal`.
DipoleRotation dipole_rotation(const Vec3& a_initial, const Vec3& a_final,
                               const Vec3& normal = Vec3::UnitZ());

// States on the grid points nearest t0 + n * period, n = 0, 1, ...
std::vector<std::pair<std::int64_t, PhaseState>> stroboscopic(
    const Trajectory& traj, double period);

// Unit orbit-plane normal L / |L|.
Vec3 plane_normal(const PhaseState& state);

}  // namespace akepler
