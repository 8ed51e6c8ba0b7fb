#include "akepler/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "akepler/errors.hpp"

namespace akepler {

Vec3 runge_lenz(const PhaseState& state, const KeplerParams& params) {
  const double rn = state.r.norm();
  if (!(rn > 0.0)) throw ZeroRadius("Runge-Lenz vector undefined at r = 0");
  const Vec3 L = state.r.cross(state.p);
  return state.p.cross(L) - (params.m * params.q / rn) * state.r;
}

Vec3 angular_momentum(const PhaseState& state) {
  return state.r.cross(state.p);
}

Vec3 OrbitElements::perigee_dir() const {
  const double n = runge_lenz.norm();
  if (n < kApsisThreshold) {
    throw DegenerateApsis("apsis direction undefined for a circular orbit");
  }
  return runge_lenz / n;
}

Vec3 OrbitElements::apogee_dir() const { return -perigee_dir(); }

OrbitElements orbit_elements(const PhaseState& state,
                             const KeplerParams& params) {
  const double rn = state.r.norm();
  if (!(rn > 0.0)) throw ZeroRadius("orbit elements undefined at r = 0");
  OrbitElements el;
  el.energy = kinetic_energy(params, state.p) - params.q / rn;
  if (!(el.energy < 0.0)) {
    throw UnboundOrbit("orbit is not bound (E = " +
                       std::to_string(el.energy) + ")");
  }
  el.angular_momentum = angular_momentum(state);
  el.runge_lenz = runge_lenz(state, params);
  el.eccentricity = el.runge_lenz.norm() / (params.m * params.q);
  el.semi_major = -params.q / (2.0 * el.energy);
  el.period = 2.0 * std::numbers::pi *
              std::sqrt(params.m * std::pow(el.semi_major, 3) / params.q);
  return el;
}

DipoleRotation dipole_rotation(const Vec3& a_initial, const Vec3& a_final,
                               const Vec3& normal) {
  const double ni = a_initial.norm(), nf = a_final.norm();
  if (!(ni > 0.0) || !(nf > 0.0)) {
    throw ZeroVector("dipole rotation needs nonzero vectors");
  }
  DipoleRotation out;
  out.cos_phi = std::clamp(a_initial.dot(a_final) / (ni * nf), -1.0, 1.0);
  out.phi_unsigned = std::acos(out.cos_phi);

  const double nn = normal.norm();
  if (nn > 0.0) {
    const Vec3 n = normal / nn;
    const Vec3 pi = a_initial - a_initial.dot(n) * n;
    const Vec3 pf = a_final - a_final.dot(n) * n;
    out.signed_phi_in_plane = std::atan2(pi.cross(pf).dot(n), pi.dot(pf));
  }
  return out;
}

std::vector<std::pair<std::int64_t, PhaseState>> stroboscopic(
    const Trajectory& traj, double period) {
  std::vector<std::pair<std::int64_t, PhaseState>> out;
  if (traj.size() == 0 || !(period > 0.0)) return out;
  const double t0 = traj.times.front();
  const double t_last = traj.times.back();
  // Allow the last period to land a hair past the final sample.
  const double slack = 1e-9 * std::max(1.0, std::abs(t_last - t0));
  for (std::int64_t n = 0;; ++n) {
    const double target = t0 + static_cast<double>(n) * period;
    if (target > t_last + slack) break;
    auto it = std::lower_bound(traj.times.begin(), traj.times.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - traj.times.begin());
    if (idx == traj.size()) {
      idx = traj.size() - 1;
    } else if (idx > 0 &&
               target - traj.times[idx - 1] <= traj.times[idx] - target) {
      --idx;
    }
    out.emplace_back(n, traj.states[idx]);
  }
  return out;
}

Vec3 plane_normal(const PhaseState& state) {
  const Vec3 L = angular_momentum(state);
  const double n = L.norm();
  if (!(n > 0.0)) {
    throw ZeroAngularMomentum("orbit plane undefined for L = 0");
  }
  return L / n;
}

}  // namespace akepler
