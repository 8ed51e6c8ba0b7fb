#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "akepler/hamiltonians.hpp"

namespace akepler {

enum class Scheme {
  kVerlet2,   // velocity Verlet (kick-drift-kick)
  kYoshida3,  // symmetric triple-jump composition of kVerlet2
};

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

struct IntegratorConfig {
  Scheme scheme = Scheme::kYoshida3;
  double dt = 1e-3;
  std::int64_t max_steps = 1'000'000'000;
};

// Triple-jump weights: outer sub-steps a1, middle a2, with 2 a1 + a2 = 1.
struct YoshidaCoefficients {
  double outer;
  double middle;
};
YoshidaCoefficients yoshida_coefficients();

// kick(h/2, t) -> drift(h) -> kick(h/2, t + h). h may be negative.
PhaseState verlet_step(const HamiltonianSpec& spec, const PhaseState& state,
                       double t, double h);
PhaseState yoshida3_step(const HamiltonianSpec& spec, const PhaseState& state,
                         double t, double h);
PhaseState step(Scheme scheme, const HamiltonianSpec& spec,
                const PhaseState& state, double t, double h);

// Default step: min(T_orb, 2 pi / omega0) / steps_per_period. omega0 = 0
// means no anisotropy period.
double default_dt(double orbital_period, double omega0,
                  double steps_per_period = 2000.0);

// Warns (and returns false) when dt exceeds 1/100 of either period.
bool check_step_size(double dt, double orbital_period, double omega0);

// Called once per grid point, starting with step 0 at t0 and ending with the
// landing point at t1.
using StepObserver =
    std::function<void(std::int64_t step, double t, const PhaseState& state)>;

// Number of steps march() takes from t0 to t1 (last one possibly shortened).
std::int64_t step_count(double t0, double t1, double dt);

struct MarchResult {
  PhaseState state;
  std::int64_t steps = 0;
};

// Fixed-step march from t0 to t1; the last step is shortened to land on t1.
// Grid times are t0 + k dt (no accumulation).
MarchResult march(const HamiltonianSpec& spec, const PhaseState& state0,
                  double t0, double t1, const IntegratorConfig& config,
                  const StepObserver& observer = {});

struct Sampling {
  enum class Kind { kEndpoints, kStride, kStroboscopic };
  Kind kind = Kind::kEndpoints;
  std::int64_t stride = 1;
  // Stroboscopic samples sit on the grid step nearest n * period.
  double period = 0.0;

  static Sampling endpoints() { return {}; }
  static Sampling every(std::int64_t stride) {
    return {Kind::kStride, stride, 0.0};
  }
  static Sampling stroboscopic(double period) {
    return {Kind::kStroboscopic, 1, period};
  }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  Sampling sampling;
  std::int64_t steps = 0;

  std::size_t size() const noexcept { return times.size(); }
  const PhaseState& back() const { return states.back(); }
};

// Sampled trajectory; always contains the initial and final states.
Trajectory integrate(const HamiltonianSpec& spec, const PhaseState& state0,
                     double t0, double t1, const IntegratorConfig& config,
                     const Sampling& sampling = Sampling::endpoints());

struct OrderStudy {
  std::vector<double> step_sizes;
  std::vector<double> errors;  // |r_h(t1) - r_ref(t1)|
  double order = 0.0;          // NaN when `exact`
  bool exact = false;          // every error at round-off level
};

// Least-squares slope of log(error) against log(h); the reference run uses
// min(h) / 100. Requires >= 3 step sizes.
OrderStudy measure_order(const HamiltonianSpec& spec, const PhaseState& state0,
                         double t0, double t1, Scheme scheme,
                         std::span<const double> step_sizes);

}  // namespace akepler
