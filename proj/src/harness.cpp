#include "akepler/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "akepler/errors.hpp"
#include "akepler/theory.hpp"

namespace akepler {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Running mean of a vector quantity.
struct VecMean {
  Vec3 sum = Vec3::Zero();
  std::int64_t count = 0;

  void add(const Vec3& v) {
    sum += v;
    ++count;
  }
  Vec3 value() const { return sum / static_cast<double>(count); }
};

// Stroboscopic grid: the step nearest n * period for n = 0..count-1.
class StrobeClock {
 public:
  StrobeClock(double period, double dt, double span)
      : period_(period),
        dt_(dt),
        count_(static_cast<std::int64_t>(std::floor(span / period + 1e-9)) + 1) {}

  // Calls fn(n) for every period index that maps onto step k.
  template <typename Fn>
  void visit(std::int64_t k, Fn&& fn) {
    while (next_ < count_ && step_of(next_) == k) fn(next_++);
  }

 private:
  std::int64_t step_of(std::int64_t n) const {
    return std::llround(static_cast<double>(n) * period_ / dt_);
  }

  double period_, dt_;
  std::int64_t count_;
  std::int64_t next_ = 0;
};

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

// ---- configs ----------------------------------------------------------

ExperimentConfig fig1_preset() {
  ExperimentConfig c;
  c.variant = Variant::kMovingNucleus;
  c.omega0 = 0.0;
  c.r0_vec = Vec3(1.0, 0.0, 0.0);
  c.v0_vec = Vec3(0.0, 0.75, 0.0);
  c.settle_orbits = 0.0;
  c.nucleus = {0.3, 200.0};
  return c;
}

ExperimentConfig fig2_preset() {
  ExperimentConfig c;
  c.variant = Variant::kFixedAnisotropy;
  c.omega0 = 0.2;
  c.r0_vec = Vec3(1.0, 0.0, 0.01);
  c.v0_vec = Vec3(0.0, 0.75, 0.0);
  c.orbits = 3000.0;
  return c;
}

ExperimentConfig fig3_preset(double theta, double omega0, double tau) {
  ExperimentConfig c;
  c.variant = Variant::kRotatingAnisotropy;
  c.theta = theta;
  c.omega0 = omega0;
  c.tau = tau;
  c.r0 = 1.0;
  c.v0 = 0.75;
  return c;
}

PhaseState make_inplane_state(double r0, double v0, double theta,
                              double mass) {
  if (!(r0 > 0.0) || !(v0 > 0.0)) {
    throw DomainError("in-plane state needs R0 > 0 and V0 > 0");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("in-plane state needs theta in [0, pi]");
  }
  return {Vec3(r0, 0.0, 0.0),
          mass * v0 * Vec3(0.0, std::cos(theta), -std::sin(theta))};
}

PhaseState initial_state(const ExperimentConfig& c) {
  if (c.r0_vec && c.v0_vec) return {*c.r0_vec, c.kepler.m * *c.v0_vec};
  return make_inplane_state(c.r0, c.v0, c.theta, c.kepler.m);
}

double run_dt(const ExperimentConfig& c, double orbital_period) {
  if (c.dt) return *c.dt;
  return default_dt(orbital_period, c.omega0, c.steps_per_orbit);
}

HamiltonianSpec build_spec(const ExperimentConfig& c, double orbital_period) {
  switch (c.variant) {
    case Variant::kMovingNucleus: {
      if (c.omega0 != 0.0) {
        throw ConfigError("moving_nucleus runs require omega0 = 0");
      }
      auto path = NucleusPath::circle(
          Vec3::Zero(), c.nucleus.rho,
          c.nucleus.t_loop_orbits * orbital_period);
      return HamiltonianSpec::moving_nucleus(c.kepler, std::move(path),
                                             c.r_min_guard);
    }
    case Variant::kFixedAnisotropy:
      return HamiltonianSpec::fixed_anisotropy(c.kepler, c.omega0,
                                               c.r_min_guard);
    case Variant::kRotatingAnisotropy:
      return HamiltonianSpec::rotating_anisotropy(
          c.kepler, c.omega0, AnisotropyProtocol::tanh_ramp(c.theta, c.tau),
          c.r_min_guard);
  }
  throw ConfigError("unsupported variant");
}

// ---- moving nucleus --------------------------------------------------

RunRecord run_fig1(const ExperimentConfig& config, Trajectory* capture) {
  const auto start = Clock::now();
  ExperimentConfig cfg = config;
  cfg.variant = Variant::kMovingNucleus;

  RunRecord rec;
  rec.experiment = "fig1";
  rec.omega0 = 0.0;

  // Initial state is given relative to the nucleus (position and velocity).
  const PhaseState rel0 = initial_state(cfg);
  const OrbitElements el0 = orbit_elements(rel0, cfg.kepler);
  const double T = el0.period;
  const HamiltonianSpec spec = build_spec(cfg, T);
  const NucleusPath& path = *spec.nucleus_path();
  path.check_adiabatic(T);

  const double m = cfg.kepler.m;
  const double t_loop = cfg.nucleus.t_loop_orbits * T;
  const double settle = cfg.settle_orbits * T;
  const double t0 = -settle, t1 = t_loop + settle;

  auto comoving = [&](double t, const PhaseState& s) {
    return PhaseState{s.r - path.position(t), s.p - m * path.velocity(t)};
  };

  const PhaseState s0{rel0.r + path.position(t0),
                      rel0.p + m * path.velocity(t0)};
  const double dt = run_dt(cfg, T);
  check_step_size(dt, T, 0.0);
  const IntegratorConfig icfg{cfg.scheme, dt};

  VecMean pre, post;
  StrobeClock strobe(T, dt, t1 - t0);
  if (capture) *capture = Trajectory{{}, {}, Sampling::stroboscopic(T), 0};

  const auto result = march(
      spec, s0, t0, t1, icfg,
      [&](std::int64_t k, double t, const PhaseState& s) {
        if (settle > 0.0) {
          if (t <= 0.0) pre.add(runge_lenz(comoving(t, s), cfg.kepler));
          if (t >= t_loop) post.add(runge_lenz(comoving(t, s), cfg.kepler));
        }
        if (capture) {
          strobe.visit(k, [&](std::int64_t) {
            capture->times.push_back(t);
            capture->states.push_back(s);
          });
        }
      });

  const PhaseState rel1 = comoving(t1, result.state);
  const Vec3 a_initial = settle > 0.0 ? pre.value() : el0.runge_lenz;
  const Vec3 a_final =
      settle > 0.0 ? post.value() : runge_lenz(rel1, cfg.kepler);

  const auto rot = dipole_rotation(a_initial, a_final,
                                   plane_normal(rel1));
  rec.cos_phi_3d = rot.cos_phi;
  rec.apsis_rotation = angle_between(a_initial, a_final);
  rec.orbital_period = T;
  rec.dt = dt;
  rec.initial = el0;
  rec.final = orbit_elements(rel1, cfg.kepler);
  rec.energy_initial = total_energy(spec, s0, t0);
  rec.energy_final = total_energy(spec, result.state, t1);
  rec.steps = result.steps;
  if (capture) capture->steps = result.steps;
  rec.wall_seconds = seconds_since(start);
  return rec;
}

// ---- static easy-plane anisotropy ------------------------------------

Fig2Result run_fig2(const ExperimentConfig& config, Trajectory* capture) {
  const auto start = Clock::now();
  ExperimentConfig cfg = config;
  cfg.variant = Variant::kFixedAnisotropy;

  Fig2Result out;
  RunRecord& rec = out.record;
  rec.experiment = "fig2";
  rec.omega0 = cfg.omega0;

  const PhaseState s0 = initial_state(cfg);
  const OrbitElements el0 = orbit_elements(s0, cfg.kepler);
  const double T = el0.period;
  const HamiltonianSpec spec = build_spec(cfg, T);
  const double dt = run_dt(cfg, T);
  check_step_size(dt, T, cfg.omega0);

  const auto n_orbits = static_cast<std::int64_t>(std::floor(cfg.orbits));
  const double t1 = static_cast<double>(n_orbits) * T;
  StrobeClock strobe(T, dt, t1);

  std::vector<PhaseState> strobes;
  strobes.reserve(static_cast<std::size_t>(n_orbits) + 1);
  if (capture) *capture = Trajectory{{}, {}, Sampling::stroboscopic(T), 0};

  const auto result = march(
      spec, s0, 0.0, t1, IntegratorConfig{cfg.scheme, dt},
      [&](std::int64_t k, double t, const PhaseState& s) {
        strobe.visit(k, [&](std::int64_t) {
          strobes.push_back(s);
          if (capture) {
            capture->times.push_back(t);
            capture->states.push_back(s);
          }
        });
      });

  for (const auto& s : strobes) out.strobe_z.push_back(s.r.z());
  double sum = 0.0;
  for (double z : out.strobe_z) sum += z;
  out.z_mean = sum / static_cast<double>(out.strobe_z.size());

  const std::size_t decile = std::max<std::size_t>(1, out.strobe_z.size() / 10);
  auto envelope = [&](std::size_t from, std::size_t to) {
    double e = 0.0;
    for (std::size_t i = from; i < to; ++i) {
      e = std::max(e, std::abs(out.strobe_z[i]));
    }
    return e;
  };
  out.envelope_first = envelope(0, decile);
  out.envelope_last =
      envelope(out.strobe_z.size() - decile, out.strobe_z.size());

  const Vec3 a_initial = runge_lenz(strobes.front(), cfg.kepler);
  const Vec3 a_final = runge_lenz(strobes.back(), cfg.kepler);
  const auto rot = dipole_rotation(a_initial, a_final, Vec3::UnitZ());
  rec.cos_phi_3d = rot.cos_phi;
  rec.apsis_rotation = rot.signed_phi_in_plane;
  rec.z_residual = out.envelope_last;
  rec.orbital_period = T;
  rec.dt = dt;
  rec.initial = el0;
  rec.final = orbit_elements(result.state, cfg.kepler);
  rec.energy_initial = total_energy(spec, s0, 0.0);
  rec.energy_final = total_energy(spec, result.state, t1);
  rec.steps = result.steps;
  if (capture) capture->steps = result.steps;

  // Snapshots of one orbit at the start and at the end, for plotting.
  const double orbit_dt = T / 2048.0;
  auto one_orbit = [&](const PhaseState& s) {
    const auto traj = integrate(spec, s, 0.0, T,
                                IntegratorConfig{cfg.scheme, orbit_dt},
                                Sampling::every(8));
    std::vector<Vec3> pts;
    for (const auto& st : traj.states) pts.push_back(st.r);
    return pts;
  };
  out.orbit_initial = one_orbit(s0);
  out.orbit_final = one_orbit(result.state);

  rec.wall_seconds = seconds_since(start);
  return out;
}

// ---- rotating anisotropy axis ----------------------------------------

RunRecord run_fig3_point(double theta, double omega0, double tau,
                         const ExperimentConfig& base, Trajectory* capture) {
  const auto start = Clock::now();
  RunRecord rec;
  rec.experiment = "fig3";
  rec.theta = theta;
  rec.omega0 = omega0;
  rec.tau = tau;
  rec.cos_phi_pred = predicted_cos_phi(theta);

  ExperimentConfig cfg = base;
  cfg.variant = Variant::kRotatingAnisotropy;
  cfg.theta = theta;
  cfg.omega0 = omega0;
  cfg.tau = tau;

  const PhaseState s0 = initial_state(cfg);
  const OrbitElements el0 = orbit_elements(s0, cfg.kepler);
  const double T = el0.period;
  const HamiltonianSpec spec = build_spec(cfg, T);
  const AnisotropyProtocol& protocol = *spec.protocol();
  const double dt = run_dt(cfg, T);
  check_step_size(dt, T, omega0);

  const double settle = cfg.settle_orbits * T;
  const double drive0 = protocol.t_start(), drive1 = protocol.t_end();
  const double t0 = drive0 - settle, t1 = drive1 + settle;
  const Vec3 axis_final = spec.axis(t1);

  VecMean pre, post;
  double z_max = 0.0;
  StrobeClock strobe(T, dt, t1 - t0);
  if (capture) *capture = Trajectory{{}, {}, Sampling::stroboscopic(T), 0};

  const auto result = march(
      spec, s0, t0, t1, IntegratorConfig{cfg.scheme, dt},
      [&](std::int64_t k, double t, const PhaseState& s) {
        if (settle > 0.0) {
          if (t <= drive0) pre.add(runge_lenz(s, cfg.kepler));
          if (t >= drive1) {
            post.add(runge_lenz(s, cfg.kepler));
            z_max = std::max(z_max, std::abs(axis_final.dot(s.r)));
          }
        }
        if (capture) {
          strobe.visit(k, [&](std::int64_t) {
            capture->times.push_back(t);
            capture->states.push_back(s);
          });
        }
      });

  const Vec3 a_initial = settle > 0.0 ? pre.value() : el0.runge_lenz;
  const Vec3 a_final =
      settle > 0.0 ? post.value() : runge_lenz(result.state, cfg.kepler);
  if (settle == 0.0) z_max = std::abs(axis_final.dot(result.state.r));

  const auto rot3d = dipole_rotation(a_initial, a_final, axis_final);
  auto in_plane = [&](const Vec3& a) {
    return Vec3(a - a.dot(axis_final) * axis_final);
  };
  const auto rot_proj =
      dipole_rotation(in_plane(a_initial), in_plane(a_final), axis_final);

  rec.cos_phi_3d = rot3d.cos_phi;
  rec.cos_phi_projected = rot_proj.cos_phi;
  rec.abs_err_3d = std::abs(rec.cos_phi_3d - rec.cos_phi_pred);
  rec.apsis_rotation = rot_proj.signed_phi_in_plane;
  rec.z_residual = z_max;
  rec.orbital_period = T;
  rec.dt = dt;
  rec.initial = el0;
  rec.final = orbit_elements(result.state, cfg.kepler);
  rec.energy_initial = total_energy(spec, s0, t0);
  rec.energy_final = total_energy(spec, result.state, t1);
  rec.steps = result.steps;
  if (capture) capture->steps = result.steps;
  rec.wall_seconds = seconds_since(start);
  return rec;
}

// ---- sweeps -----------------------------------------------------------

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return g;
}

std::vector<RunRecord> sweep_theta(std::span<const double> theta_grid,
                                   double omega0, double tau,
                                   const ExperimentConfig& base, int workers) {
  if (theta_grid.empty()) throw DomainError("theta grid is empty");
  if (workers < 1) throw DomainError("workers must be >= 1");

  std::vector<RunRecord> out(theta_grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < theta_grid.size(); i = next++) {
      const double theta = theta_grid[i];
      try {
        out[i] = run_fig3_point(theta, omega0, tau, base);
      } catch (const std::exception& e) {
        RunRecord failed;
        failed.experiment = "fig3";
        failed.theta = theta;
        failed.omega0 = omega0;
        failed.tau = tau;
        try {
          failed.cos_phi_pred = predicted_cos_phi(theta);
        } catch (const DomainError&) {
        }
        failed.error_code = error_class(e);
        out[i] = std::move(failed);
      }
    }
  };

  const auto n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(workers), theta_grid.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace akepler
