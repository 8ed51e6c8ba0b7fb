#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "akepler/diagnostics.hpp"
#include "akepler/hamiltonians.hpp"
#include "akepler/integrator.hpp"

namespace akepler {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NucleusLoopConfig {
  double rho = 0.3;
  double t_loop_orbits = 200.0;
};

struct OutputConfig {
  std::string csv;
  std::string svg;
};

// Declarative run description. The initial state is either explicit
// (position and velocity vectors) or built in the easy plane from
// (r0, v0, theta); see make_inplane_state.
struct ExperimentConfig {
  Variant variant = Variant::kRotatingAnisotropy;
  KeplerParams kepler{};
  double omega0 = 0.0;
  double r_min_guard = kDefaultRMinGuard;

  double r0 = 1.0;
  double v0 = 0.75;
  std::optional<Vec3> r0_vec;
  std::optional<Vec3> v0_vec;

  double theta = 0.0;
  double tau = 10.0;
  double settle_orbits = 10.0;
  double steps_per_orbit = 2000.0;
  std::optional<double> dt;  // overrides steps_per_orbit
  double orbits = 3000.0;    // run length of fixed-anisotropy runs
  Scheme scheme = Scheme::kYoshida3;
  NucleusLoopConfig nucleus;
  OutputConfig output;
  int workers = 1;
};

// Parses the JSON config document. Unknown keys are rejected with the key
// named in the ConfigError message.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Presets: moving nucleus (fig1), fixed anisotropy (fig2), rotating axis
// (fig3).
ExperimentConfig fig1_preset();
ExperimentConfig fig2_preset();
ExperimentConfig fig3_preset(double theta, double omega0, double tau);

// r = (R0, 0, 0), p = m V0 (0, cos theta, -sin theta): in the plane normal
// to the anisotropy axis at (theta, phi = 0).
PhaseState make_inplane_state(double r0, double v0, double theta,
                              double mass = 1.0);

PhaseState initial_state(const ExperimentConfig& config);

struct RunRecord {
  std::string experiment;
  double theta = kNaN;
  double omega0 = kNaN;
  double tau = kNaN;
  double orbital_period = kNaN;
  double dt = kNaN;

  std::optional<OrbitElements> initial;
  std::optional<OrbitElements> final;

  double cos_phi_3d = kNaN;
  double cos_phi_projected = kNaN;
  double cos_phi_pred = kNaN;
  double abs_err_3d = kNaN;
  // Moving nucleus: unsigned angle between initial and final A.
  // Anisotropy runs: signed in-plane rotation of A about the final easy axis.
  double apsis_rotation = kNaN;
  // Largest |Z| (out of the final easy plane) over the closing window.
  double z_residual = kNaN;
  double energy_initial = kNaN;
  double energy_final = kNaN;
  std::int64_t steps = 0;
  double wall_seconds = 0.0;
  std::string error_code;  // empty on success

  bool ok() const noexcept { return error_code.empty(); }
};

struct Fig2Result {
  RunRecord record;
  std::vector<double> strobe_z;  // z at n T_orb, n = 0..orbits
  double z_mean = kNaN;
  double envelope_first = kNaN;  // max |z| over the first 10% of samples
  double envelope_last = kNaN;   // ... and the last 10%
  std::vector<Vec3> orbit_initial;  // one orbit from the initial state
  std::vector<Vec3> orbit_final;    // one orbit from the final state
};

// Step size of a run: config.dt if set, otherwise
// min(T_orb, 2 pi / omega0) / steps_per_orbit.
double run_dt(const ExperimentConfig& config, double orbital_period);

// If `capture` is given it receives one sample per initial orbital period.
RunRecord run_fig1(const ExperimentConfig& config,
                   Trajectory* capture = nullptr);
Fig2Result run_fig2(const ExperimentConfig& config,
                    Trajectory* capture = nullptr);
RunRecord run_fig3_point(double theta, double omega0, double tau,
                         const ExperimentConfig& base,
                         Trajectory* capture = nullptr);

// `n` points spaced uniformly over [lo, hi] (inclusive).
std::vector<double> uniform_grid(double lo, double hi, int n);

// Independent rotating-axis runs over the grid, returned in grid order. Failing
// points carry their error class in `error_code`; the sweep continues.
std::vector<RunRecord> sweep_theta(std::span<const double> theta_grid,
                                   double omega0, double tau,
                                   const ExperimentConfig& base, int workers);

// ---- files ------------------------------------------------------------

inline constexpr const char* kSweepCsvHeader =
    "theta,cos_theta,omega0,tau,cos_phi_3d,cos_phi_projected,cos_phi_pred,"
    "abs_err_3d,z_residual,energy_initial,energy_final,steps,error_code";
inline constexpr const char* kTrajectoryCsvHeader =
    "t,x,y,z,px,py,pz,energy,ax,ay,az,lz";

struct SweepRow {
  double theta, cos_theta, omega0, tau, cos_phi_3d, cos_phi_projected,
      cos_phi_pred, abs_err_3d, z_residual, energy_initial, energy_final;
  std::int64_t steps;
  std::string error_code;
};

SweepRow to_sweep_row(const RunRecord& record);

// Locale-independent shortest round-trip formatting ('.' separator, "nan").
std::string format_number(double value);

std::string format_sweep_csv(std::span<const RunRecord> records);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);
void write_csv(std::span<const RunRecord> records, const std::string& path);

std::string format_trajectory_csv(const HamiltonianSpec& spec,
                                  const Trajectory& traj);
void write_trajectory_csv(const HamiltonianSpec& spec, const Trajectory& traj,
                          const std::string& path);

// Scatter of simulated and predicted cos(phi) against cos(theta).
std::string render_sweep_svg(std::span<const RunRecord> records);
void emit_svg(std::span<const RunRecord> records, const std::string& path);

// Projection of two orbits on the xy plane (initial dashed, final solid).
std::string render_orbit_svg(std::span<const Vec3> initial,
                             std::span<const Vec3> final);
void emit_orbit_svg(std::span<const Vec3> initial, std::span<const Vec3> final,
                    const std::string& path);

// Hamiltonian the preset runners integrate for `config`.
HamiltonianSpec build_spec(const ExperimentConfig& config,
                           double orbital_period);

}  // namespace akepler
