#include "akepler/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "akepler/errors.hpp"
#include "akepler/log.hpp"

namespace akepler {

std::string_view to_string(Scheme s) {
  return s == Scheme::kVerlet2 ? "verlet2" : "yoshida3";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "verlet2" || name == "verlet") return Scheme::kVerlet2;
  if (name == "yoshida3" || name == "yoshida") return Scheme::kYoshida3;
  throw ConfigError("unknown integration scheme '" + std::string(name) + "'");
}

YoshidaCoefficients yoshida_coefficients() {
  const double cbrt2 = std::cbrt(2.0);
  const double outer = 1.0 / (2.0 - cbrt2);
  return {outer, -cbrt2 / (2.0 - cbrt2)};
}

PhaseState verlet_step(const HamiltonianSpec& spec, const PhaseState& state,
                       double t, double h) {
  const double inv_m = 1.0 / spec.kepler_params().m;
  PhaseState s = state;
  s.p += (0.5 * h) * force(spec, s.r, t);
  s.r += (h * inv_m) * s.p;
  s.p += (0.5 * h) * force(spec, s.r, t + h);
  return s;
}

PhaseState yoshida3_step(const HamiltonianSpec& spec, const PhaseState& state,
                         double t, double h) {
  static const YoshidaCoefficients c = yoshida_coefficients();
  const double h1 = c.outer * h;
  const double h2 = c.middle * h;
  PhaseState s = verlet_step(spec, state, t, h1);
  s = verlet_step(spec, s, t + h1, h2);
  return verlet_step(spec, s, t + h1 + h2, h1);
}

PhaseState step(Scheme scheme, const HamiltonianSpec& spec,
                const PhaseState& state, double t, double h) {
  return scheme == Scheme::kVerlet2 ? verlet_step(spec, state, t, h)
                                    : yoshida3_step(spec, state, t, h);
}

double default_dt(double orbital_period, double omega0,
                  double steps_per_period) {
  double period = orbital_period;
  if (omega0 > 0.0) {
    period = std::min(period, 2.0 * std::numbers::pi / omega0);
  }
  return period / steps_per_period;
}

bool check_step_size(double dt, double orbital_period, double omega0) {
  bool ok = true;
  if (dt > orbital_period / 100.0) {
    warn("dt = " + std::to_string(dt) + " exceeds T_orb/100");
    ok = false;
  }
  if (omega0 > 0.0 && dt > 2.0 * std::numbers::pi / omega0 / 100.0) {
    warn("dt = " + std::to_string(dt) + " exceeds (2 pi / omega0)/100");
    ok = false;
  }
  return ok;
}

std::int64_t step_count(double t0, double t1, double dt) {
  const double ratio = std::abs(t1 - t0) / dt;
  // Absorb round-off so that an exact multiple of dt does not get a
  // spurious sliver step.
  return static_cast<std::int64_t>(
      std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

MarchResult march(const HamiltonianSpec& spec, const PhaseState& state0,
                  double t0, double t1, const IntegratorConfig& config,
                  const StepObserver& observer) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw DomainError("dt must be positive");
  }
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw DomainError("integration bounds must be finite");
  }
  if (std::abs(t1 - t0) / config.dt > static_cast<double>(config.max_steps)) {
    throw StepBudgetExceeded("integration over " +
                             std::to_string(std::abs(t1 - t0)) +
                             " time units exceeds the budget of " +
                             std::to_string(config.max_steps) + " steps");
  }
  const std::int64_t n = step_count(t0, t1, config.dt);
  const double h = t1 >= t0 ? config.dt : -config.dt;

  MarchResult out{state0, 0};
  if (observer) observer(0, t0, out.state);
  for (std::int64_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const bool last = k + 1 == n;
    const double hk = last ? t1 - t : h;
    out.state = step(config.scheme, spec, out.state, t, hk);
    if (observer) observer(k + 1, last ? t1 : t + h, out.state);
  }
  out.steps = n;
  return out;
}

Trajectory integrate(const HamiltonianSpec& spec, const PhaseState& state0,
                     double t0, double t1, const IntegratorConfig& config,
                     const Sampling& sampling) {
  Trajectory traj;
  traj.sampling = sampling;
  if (t1 == t0) {
    traj.times.push_back(t0);
    traj.states.push_back(state0);
    return traj;
  }
  if (sampling.kind == Sampling::Kind::kStride && sampling.stride < 1) {
    throw DomainError("sampling stride must be >= 1");
  }
  if (sampling.kind == Sampling::Kind::kStroboscopic &&
      !(sampling.period > 0.0)) {
    throw DomainError("stroboscopic period must be positive");
  }

  std::int64_t next_strobe = 0;  // index n of the next period to record
  auto strobe_step = [&](std::int64_t n) {
    return static_cast<std::int64_t>(
        std::llround(static_cast<double>(n) * sampling.period / config.dt));
  };
  auto record = [&](double t, const PhaseState& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
  };

  const auto result = march(
      spec, state0, t0, t1, config,
      [&](std::int64_t k, double t, const PhaseState& s) {
        bool take = k == 0;
        switch (sampling.kind) {
          case Sampling::Kind::kEndpoints:
            break;
          case Sampling::Kind::kStride:
            take = take || k % sampling.stride == 0;
            break;
          case Sampling::Kind::kStroboscopic:
            while (strobe_step(next_strobe) < k) ++next_strobe;
            if (strobe_step(next_strobe) == k) {
              take = true;
              ++next_strobe;
            }
            break;
        }
        if (take) record(t, s);
      });

  if (traj.times.back() != t1) record(t1, result.state);
  traj.steps = result.steps;
  return traj;
}

OrderStudy measure_order(const HamiltonianSpec& spec, const PhaseState& state0,
                         double t0, double t1, Scheme scheme,
                         std::span<const double> step_sizes) {
  if (step_sizes.size() < 3) {
    throw DomainError("order study needs at least three step sizes");
  }
  OrderStudy study;
  study.step_sizes.assign(step_sizes.begin(), step_sizes.end());
  const double h_min =
      *std::min_element(step_sizes.begin(), step_sizes.end());

  IntegratorConfig cfg{scheme, h_min / 100.0};
  const PhaseState ref = march(spec, state0, t0, t1, cfg).state;
  const double scale = std::max(1.0, ref.r.norm());

  for (double h : step_sizes) {
    cfg.dt = h;
    const PhaseState s = march(spec, state0, t0, t1, cfg).state;
    study.errors.push_back((s.r - ref.r).norm());
  }

  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale;
  study.exact = std::all_of(study.errors.begin(), study.errors.end(),
                            [&](double e) { return e <= floor; });
  if (study.exact) {
    study.order = std::numeric_limits<double>::quiet_NaN();
    return study;
  }

  const auto n = static_cast<Eigen::Index>(step_sizes.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(study.step_sizes[i]);
    rhs(i) = std::log(std::max(study.errors[i], floor));
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  study.order = fit(1);
  return study;
}

}  // namespace akepler
