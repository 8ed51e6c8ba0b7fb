#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "akepler/errors.hpp"
#include "akepler/harness.hpp"
#include "akepler/log.hpp"
#include "akepler/theory.hpp"
#include "akepler/verify.hpp"

namespace akepler::cli {
namespace {

std::string num(double v) { return format_number(v); }

// Restores the previous warning sink on scope exit.
class WarningRedirect {
 public:
  explicit WarningRedirect(std::ostream& err)
      : previous_(set_warning_sink(
            [&err](const std::string& msg) { err << "warning: " << msg << '\n'; })) {}
  ~WarningRedirect() { set_warning_sink(previous_); }
  WarningRedirect(const WarningRedirect&) = delete;
  WarningRedirect& operator=(const WarningRedirect&) = delete;

 private:
  WarningSink previous_;
};

// (theta, phi) pairs, one per line, separated by a comma or whitespace.
// Blank lines and lines starting with '#' are skipped.
std::vector<FrameAngles> read_loop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read loop file '" + path + "'");
  std::vector<FrameAngles> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    FrameAngles a;
    if (!(fields >> a.theta >> a.phi)) {
      throw ConfigError("loop file '" + path + "' line " +
                        std::to_string(lineno) + ": expected 'theta phi'");
    }
    out.push_back(a);
  }
  return out;
}

void print_record(std::ostream& out, const RunRecord& r) {
  out << r.experiment;
  auto kv = [&](const char* key, double v) {
    if (!std::isnan(v)) out << ' ' << key << '=' << num(v);
  };
  kv("theta", r.theta);
  kv("omega0", r.omega0);
  kv("tau", r.tau);
  kv("cos_phi_3d", r.cos_phi_3d);
  kv("cos_phi_projected", r.cos_phi_projected);
  kv("cos_phi_pred", r.cos_phi_pred);
  kv("abs_err_3d", r.abs_err_3d);
  kv("apsis_rotation", r.apsis_rotation);
  kv("z_residual", r.z_residual);
  kv("energy_drift", r.energy_final - r.energy_initial);
  out << " steps=" << r.steps;
  if (!r.ok()) out << " error=" << r.error_code;
  out << '\n';
}

// Flags shared by the simulation subcommands.
struct RunFlags {
  double steps_per_orbit = 2000.0;
  std::string scheme = "yoshida3";
  std::string out_csv;
  std::string out_svg;

  void add_to(CLI::App& app, bool with_svg = true) {
    app.add_option("--steps-per-orbit", steps_per_orbit,
                   "integration steps per min(T_orb, 2 pi / omega0)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--scheme", scheme, "verlet2 or yoshida3")
        ->capture_default_str()
        ->check(CLI::IsMember({"verlet2", "yoshida3"}));
    app.add_option("--out", out_csv,
                   "trajectory CSV, one sample per orbital period");
    if (with_svg) app.add_option("--svg", out_svg, "SVG plot path");
  }

  void apply(ExperimentConfig& c) const {
    c.steps_per_orbit = steps_per_orbit;
    c.scheme = scheme_from_string(scheme);
  }
};

void write_capture(const ExperimentConfig& cfg, const RunRecord& rec,
                   const Trajectory& traj, const std::string& path) {
  if (path.empty()) return;
  write_trajectory_csv(build_spec(cfg, rec.orbital_period), traj, path);
}

int finish_fig2(std::ostream& out, const ExperimentConfig& cfg,
                const Fig2Result& res, const Trajectory& traj,
                const std::string& csv, const std::string& svg, double tol) {
  const RunRecord& r = res.record;
  out << "fig2 omega0=" << num(r.omega0)
      << " orbits=" << res.strobe_z.size() - 1
      << " apsis_rotation=" << num(r.apsis_rotation)
      << " z_mean=" << num(res.z_mean)
      << " z_envelope_first=" << num(res.envelope_first)
      << " z_envelope_last=" << num(res.envelope_last)
      << " energy_drift=" << num(r.energy_final - r.energy_initial)
      << " steps=" << r.steps << '\n';
  write_capture(cfg, r, traj, csv);
  if (!svg.empty()) emit_orbit_svg(res.orbit_initial, res.orbit_final, svg);
  const bool ok = std::abs(r.apsis_rotation) <= tol &&
                  std::abs(res.z_mean) <= 1e-3 &&
                  res.envelope_last <= 2.0 * res.envelope_first;
  return ok ? kOk : kToleranceBreach;
}

int cmd_predict(std::ostream& out, const std::optional<double>& theta,
                const std::string& loop_path) {
  if (theta) {
    const double omega = solid_angle_const_theta(*theta);
    out << "theta=" << num(*theta) << '\n'
        << "omega_sa=" << num(omega) << '\n'
        << "hannay_shift=" << num(2.0 * std::numbers::pi * std::cos(*theta))
        << '\n'
        << "phi=" << num(omega) << '\n'
        << "cos_phi=" << num(predicted_cos_phi(*theta)) << '\n';
    return kOk;
  }
  const LoopOnSphere loop(read_loop_file(loop_path));
  const double phi = predicted_rotation(loop);
  out << "samples=" << loop.samples().size() << '\n'
      << "winding=" << loop.winding() << '\n'
      << "omega_sa=" << num(phi) << '\n'
      << "hannay_shift=" << num(hannay_shift(loop)) << '\n'
      << "phi=" << num(phi) << '\n'
      << "cos_phi=" << num(std::cos(phi)) << '\n';
  return kOk;
}

int cmd_simulate(std::ostream& out, const std::string& config_path,
                 std::string csv, std::string svg) {
  const ExperimentConfig cfg = load_config(config_path);
  if (csv.empty()) csv = cfg.output.csv;
  if (svg.empty()) svg = cfg.output.svg;
  Trajectory traj;
  switch (cfg.variant) {
    case Variant::kMovingNucleus: {
      const RunRecord r = run_fig1(cfg, &traj);
      print_record(out, r);
      write_capture(cfg, r, traj, csv);
      return kOk;
    }
    case Variant::kFixedAnisotropy: {
      const Fig2Result res = run_fig2(cfg, &traj);
      finish_fig2(out, cfg, res, traj, csv, svg, 0.05);
      return kOk;
    }
    case Variant::kRotatingAnisotropy: {
      const RunRecord r =
          run_fig3_point(cfg.theta, cfg.omega0, cfg.tau, cfg, &traj);
      print_record(out, r);
      write_capture(cfg, r, traj, csv);
      if (!svg.empty()) emit_svg(std::span(&r, 1), svg);
      return kOk;
    }
  }
  return kOk;
}

int cmd_sweep(std::ostream& out, const ExperimentConfig& base, double omega0,
              double tau_omega0, double theta_min, double theta_max,
              int points, int workers, const std::string& csv,
              const std::string& svg, double tol) {
  if (!(omega0 > 0.0)) throw DomainError("--omega0 must be positive");
  if (!(tau_omega0 > 0.0)) throw DomainError("--tau-omega0 must be positive");
  const auto grid = uniform_grid(theta_min, theta_max, points);
  for (double th : grid) {
    if (!(th >= 0.0 && th <= std::numbers::pi)) {
      throw DomainError("theta grid leaves [0, pi]");
    }
  }
  const auto records = sweep_theta(grid, omega0, tau_omega0 / omega0, base,
                                   workers);
  write_csv(records, csv);
  if (!svg.empty()) emit_svg(records, svg);

  double worst = 0.0;
  bool failed = false;
  for (const auto& r : records) {
    print_record(out, r);
    if (!r.ok() || !(r.abs_err_3d <= tol)) failed = true;
    if (!std::isnan(r.abs_err_3d)) worst = std::max(worst, r.abs_err_3d);
  }
  out << "sweep points=" << records.size() << " max_abs_err=" << num(worst)
      << " tol=" << num(tol) << (failed ? " FAIL" : " PASS") << '\n';
  return failed ? kToleranceBreach : kOk;
}

int cmd_convergence(std::ostream& out, const std::string& experiment,
                    const std::vector<double>& levels, double theta,
                    double omega0, double tau_omega0) {
  if (experiment == "order") {
    const KeplerParams params{};
    const PhaseState s0{Vec3(1.0, 0.0, 0.0), Vec3(0.0, 0.75, 0.0)};
    const double T = orbit_elements(s0, params).period;
    std::vector<double> h;
    for (double n : levels) h.push_back(T / n);
    for (Scheme scheme : {Scheme::kVerlet2, Scheme::kYoshida3}) {
      const auto study =
          measure_order(HamiltonianSpec::kepler(params), s0, 0.0, T, scheme, h);
      for (std::size_t i = 0; i < h.size(); ++i) {
        out << to_string(scheme) << " steps_per_orbit=" << num(levels[i])
            << " dt=" << num(h[i]) << " error=" << num(study.errors[i])
            << '\n';
      }
      out << to_string(scheme) << " order=" << num(study.order) << '\n';
    }
    return kOk;
  }
  for (double n : levels) {
    out << "steps_per_orbit=" << num(n) << ' ';
    if (experiment == "fig1") {
      auto c = fig1_preset();
      c.steps_per_orbit = n;
      print_record(out, run_fig1(c));
    } else if (experiment == "fig2") {
      auto c = fig2_preset();
      c.steps_per_orbit = n;
      print_record(out, run_fig2(c).record);
    } else {
      auto c = fig3_preset(theta, omega0, tau_omega0 / omega0);
      c.steps_per_orbit = n;
      print_record(out, run_fig3_point(theta, omega0, c.tau, c));
    }
  }
  return kOk;
}

int cmd_verify(std::ostream& out, const std::string& suite,
               std::uint64_t seed) {
  VerifyOptions options;
  options.seed = seed;
  const auto checks = run_verify_suite(suite, options);
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name
        << " = " << num(c.value) << " (allowed [" << num(c.lo) << ", "
        << num(c.hi) << "])\n";
    ok = ok && c.passed;
  }
  out << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? kOk : kToleranceBreach;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  WarningRedirect redirect(err);

  CLI::App app{
      "Apsis rotation of an anisotropic Kepler orbit under adiabatic driving.\n"
      "Simulation units: m = Q = 1 unless configured; angles in radians.",
      "akepler-cli"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  // predict
  auto* predict = app.add_subcommand(
      "predict", "closed-form solid angle, Hannay shift and apsis rotation");
  std::optional<double> theta_opt;
  std::string loop_path;
  auto* theta_flag = predict->add_option(
      "--theta", theta_opt, "colatitude of the easy axis [rad], in [0, pi]");
  auto* loop_flag = predict->add_option(
      "--loop", loop_path,
      "file of 'theta phi' samples [rad] tracing a closed loop");
  theta_flag->excludes(loop_flag);
  predict->callback([&] {
    if (!theta_opt && loop_path.empty()) {
      throw CLI::ValidationError("predict", "one of --theta or --loop is required");
    }
  });

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "run the experiment described by a JSON config");
  std::string config_path, sim_csv, sim_svg;
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--out", sim_csv,
                       "trajectory CSV, one sample per orbital period");
  simulate->add_option("--svg", sim_svg, "SVG plot path");

  // fig1
  auto* fig1 = app.add_subcommand(
      "fig1", "circular loop of the nucleus; reports the Runge-Lenz rotation");
  double rho = 0.3, t_loop = 200.0, fig1_tol = 0.02;
  RunFlags fig1_flags;
  fig1->add_option("--rho", rho, "loop radius [length units]")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fig1->add_option("--t-loop-orbits", t_loop,
                   "loop period in initial orbital periods")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fig1->add_option("--tol", fig1_tol,
                   "largest accepted rotation of A [rad]; exit 1 above")
      ->capture_default_str();
  fig1_flags.add_to(*fig1, false);

  // fig2
  auto* fig2 = app.add_subcommand(
      "fig2", "fixed easy-plane anisotropy; z drift and apsis rotation");
  double fig2_omega0 = 0.2, fig2_orbits = 3000.0, fig2_tol = 0.05;
  RunFlags fig2_flags;
  fig2->add_option("--omega0", fig2_omega0, "anisotropy frequency [1/time]")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fig2->add_option("--orbits", fig2_orbits, "run length in orbital periods")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fig2->add_option("--tol", fig2_tol,
                   "largest accepted |apsis rotation| [rad]; exit 1 above")
      ->capture_default_str();
  fig2_flags.add_to(*fig2);

  // fig3
  auto* fig3 = app.add_subcommand(
      "fig3", "one tanh sweep of the easy axis around a cone of colatitude theta");
  double fig3_theta = std::numbers::pi / 3.0, fig3_omega0 = 5.0,
         fig3_tau_omega0 = 50.0, fig3_settle = 10.0, fig3_tol = 0.05;
  RunFlags fig3_flags;
  fig3->add_option("--theta", fig3_theta, "cone colatitude [rad], in [0, pi]")
      ->capture_default_str();
  fig3->add_option("--omega0", fig3_omega0, "anisotropy frequency [1/time]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fig3->add_option("--tau-omega0", fig3_tau_omega0,
                   "ramp time tau in units of 1/omega0 (dimensionless)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fig3->add_option("--settle-orbits", fig3_settle,
                   "orbital periods before and after the ramp window")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fig3->add_option("--tol", fig3_tol,
                   "largest accepted |cos phi - predicted|; exit 1 above")
      ->capture_default_str();
  fig3_flags.add_to(*fig3);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "fig3 runs over a uniform theta grid, written as CSV");
  double sw_omega0 = 0.0, sw_tau_omega0 = 0.0, sw_lo = 0.1,
         sw_hi = std::numbers::pi / 2.0, sw_tol = 0.05, sw_settle = 10.0,
         sw_spo = 2000.0;
  int sw_points = 9, sw_workers = 1;
  std::string sw_csv, sw_svg;
  sweep->add_option("--omega0", sw_omega0, "anisotropy frequency [1/time]")
      ->required();
  sweep->add_option("--tau-omega0", sw_tau_omega0,
                    "ramp time tau in units of 1/omega0 (dimensionless)")
      ->required();
  sweep->add_option("--theta-min", sw_lo, "first grid colatitude [rad]")
      ->capture_default_str();
  sweep->add_option("--theta-max", sw_hi, "last grid colatitude [rad]")
      ->capture_default_str();
  sweep->add_option("--points", sw_points, "number of grid points (>= 1)")
      ->capture_default_str();
  sweep->add_option("--workers", sw_workers, "worker threads (>= 1)")
      ->capture_default_str();
  sweep->add_option("--out", sw_csv, "sweep CSV path")->required();
  sweep->add_option("--svg", sw_svg, "SVG scatter of cos phi against cos theta");
  sweep->add_option("--tol", sw_tol,
                    "largest accepted |cos phi - predicted|; exit 1 above")
      ->capture_default_str();
  sweep->add_option("--settle-orbits", sw_settle,
                    "orbital periods before and after the ramp window")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--steps-per-orbit", sw_spo,
                    "integration steps per min(T_orb, 2 pi / omega0)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // convergence
  auto* conv = app.add_subcommand(
      "convergence", "step-size refinement study of the integrator or a preset");
  std::string conv_exp = "order";
  std::vector<double> conv_levels{500.0, 1000.0, 2000.0, 4000.0};
  double conv_theta = std::numbers::pi / 3.0, conv_omega0 = 5.0,
         conv_tau_omega0 = 50.0;
  conv->add_option("--experiment", conv_exp, "order, fig1, fig2 or fig3")
      ->capture_default_str()
      ->check(CLI::IsMember({"order", "fig1", "fig2", "fig3"}));
  conv->add_option("--steps-per-orbit", conv_levels,
                   "refinement levels (steps per orbital period)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  conv->add_option("--theta", conv_theta, "fig3 colatitude [rad]")
      ->capture_default_str();
  conv->add_option("--omega0", conv_omega0, "fig3 anisotropy frequency [1/time]")
      ->capture_default_str();
  conv->add_option("--tau-omega0", conv_tau_omega0,
                   "fig3 ramp time in units of 1/omega0")
      ->capture_default_str();

  // verify
  auto* verify =
      app.add_subcommand("verify", "numerical property suites with pass/fail table");
  std::string suite = "all";
  std::uint64_t seed = VerifyOptions{}.seed;
  verify->add_option("--suite", suite,
                     "conservation, order, coriolis, reversibility or all")
      ->capture_default_str()
      ->check(CLI::IsMember(
          std::vector<std::string>(std::begin(kVerifySuites), std::end(kVerifySuites))));
  verify->add_option("--seed", seed, "seed of the random coriolis inputs")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*predict) return cmd_predict(out, theta_opt, loop_path);
    if (*simulate) return cmd_simulate(out, config_path, sim_csv, sim_svg);
    if (*fig1) {
      auto c = fig1_preset();
      c.nucleus = {rho, t_loop};
      fig1_flags.apply(c);
      Trajectory traj;
      const RunRecord r = run_fig1(c, fig1_flags.out_csv.empty() ? nullptr : &traj);
      print_record(out, r);
      write_capture(c, r, traj, fig1_flags.out_csv);
      return r.apsis_rotation <= fig1_tol ? kOk : kToleranceBreach;
    }
    if (*fig2) {
      auto c = fig2_preset();
      c.omega0 = fig2_omega0;
      c.orbits = fig2_orbits;
      fig2_flags.apply(c);
      Trajectory traj;
      const Fig2Result res =
          run_fig2(c, fig2_flags.out_csv.empty() ? nullptr : &traj);
      return finish_fig2(out, c, res, traj, fig2_flags.out_csv,
                         fig2_flags.out_svg, fig2_tol);
    }
    if (*fig3) {
      auto c = fig3_preset(fig3_theta, fig3_omega0,
                           fig3_tau_omega0 / fig3_omega0);
      c.settle_orbits = fig3_settle;
      fig3_flags.apply(c);
      Trajectory traj;
      const RunRecord r =
          run_fig3_point(c.theta, c.omega0, c.tau, c,
                         fig3_flags.out_csv.empty() ? nullptr : &traj);
      print_record(out, r);
      write_capture(c, r, traj, fig3_flags.out_csv);
      if (!fig3_flags.out_svg.empty()) emit_svg(std::span(&r, 1), fig3_flags.out_svg);
      return r.abs_err_3d <= fig3_tol ? kOk : kToleranceBreach;
    }
    if (*sweep) {
      ExperimentConfig base = fig3_preset(0.0, sw_omega0, 1.0);
      base.settle_orbits = sw_settle;
      base.steps_per_orbit = sw_spo;
      return cmd_sweep(out, base, sw_omega0, sw_tau_omega0, sw_lo, sw_hi,
                       sw_points, sw_workers, sw_csv, sw_svg, sw_tol);
    }
    if (*conv) {
      return cmd_convergence(out, conv_exp, conv_levels, conv_theta,
                             conv_omega0, conv_tau_omega0);
    }
    if (*verify) return cmd_verify(out, suite, seed);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace akepler::cli
