// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance <n>     run criterion n (1..10)
//   acceptance all     run every criterion
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "akepler/errors.hpp"
#include "akepler/harness.hpp"
#include "akepler/theory.hpp"
#include "akepler/verify.hpp"

using namespace akepler;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) { return format_number(v); }

Outcome from_checks(const std::vector<Check>& checks) {
  bool ok = true;
  std::string detail;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    if (!detail.empty()) detail += "; ";
    detail += c.name + "=" + fmt(c.value) + (c.passed ? "" : " [out of range]");
  }
  return {ok, detail};
}

Outcome sweep_criterion(double omega0, double tau_omega0, double tol) {
  const auto grid = uniform_grid(0.1, kPi / 2, 9);
  const double tau = tau_omega0 / omega0;
  const auto records =
      sweep_theta(grid, omega0, tau, fig3_preset(0.0, omega0, tau), 4);
  double worst = 0.0;
  bool ok = true;
  std::string detail;
  for (const auto& r : records) {
    if (!r.ok()) {
      ok = false;
      detail += " theta=" + fmt(r.theta) + ":" + r.error_code;
      continue;
    }
    worst = std::max(worst, r.abs_err_3d);
    detail += " theta=" + fmt(r.theta) + ":" + fmt(r.cos_phi_3d) + "/" +
              fmt(r.cos_phi_pred);
  }
  ok = ok && worst <= tol;
  return {ok, "max_abs_err=" + fmt(worst) + " tol=" + fmt(tol) +
                  " (sim/pred)" + detail};
}

Outcome criterion1() { return sweep_criterion(5.0, 50.0, 0.05); }
Outcome criterion2() { return sweep_criterion(0.5, 10.0, 0.10); }

Outcome criterion3() {
  const Fig2Result res = run_fig2(fig2_preset());
  const double rot = res.record.apsis_rotation;
  const double ratio = res.envelope_last / res.envelope_first;
  const bool ok = std::abs(rot) <= 0.05 && std::abs(res.z_mean) <= 1e-3 &&
                  ratio <= 2.0;
  return {ok, "apsis_rotation=" + fmt(rot) + " z_mean=" + fmt(res.z_mean) +
                  " envelope_ratio=" + fmt(ratio)};
}

Outcome criterion4() {
  const RunRecord r = run_fig1(fig1_preset());
  return {r.apsis_rotation <= 0.02,
          "A_direction_change=" + fmt(r.apsis_rotation) + " tol=0.02"};
}

Outcome criterion5() { return from_checks(verify_conservation()); }
Outcome criterion6() { return from_checks(verify_order()); }
Outcome criterion7() { return from_checks(verify_reversibility()); }
Outcome criterion8() { return from_checks(verify_coriolis()); }

Outcome criterion9() {
  bool exact = true;
  for (int i = 0; i <= 1000; ++i) {
    const double th = kPi * i / 1000;
    exact = exact && predicted_cos_phi(th) == std::cos(solid_angle_const_theta(th));
  }
  double worst_shift = 0.0, worst_identity = 0.0;
  for (double th : {0.1, 0.5, kPi / 3, 1.2, kPi / 2, 2.5}) {
    for (int w : {1, 2, -1}) {
      std::vector<FrameAngles> s;
      const int n = 512 * std::abs(w);
      for (int i = 0; i <= n; ++i) s.push_back({th, 2 * kPi * w * i / n});
      const LoopOnSphere loop(std::move(s));
      const double shift = hannay_shift(loop);
      if (w == 1) {
        worst_shift = std::max(worst_shift, std::abs(shift - 2 * kPi * std::cos(th)));
      }
      worst_identity = std::max(
          worst_identity,
          std::abs(predicted_rotation(loop) + shift - 2 * kPi * loop.winding()));
    }
  }
  const bool ok = exact && worst_shift <= 1e-9 && worst_identity <= 1e-9;
  return {ok, std::string("exact_cos=") + (exact ? "yes" : "no") +
                  " hannay_err=" + fmt(worst_shift) +
                  " identity_err=" + fmt(worst_identity)};
}

Outcome criterion10() {
  const auto grid = uniform_grid(0.1, kPi / 2, 9);
  const double omega0 = 5.0, tau = 10.0;
  const auto base = fig3_preset(0.0, omega0, tau);
  const std::string ref = format_sweep_csv(sweep_theta(grid, omega0, tau, base, 1));
  bool ok = true;
  std::string detail = "bytes=" + std::to_string(ref.size());
  for (int workers : {2, 4, 9}) {
    const bool same =
        format_sweep_csv(sweep_theta(grid, omega0, tau, base, workers)) == ref;
    ok = ok && same;
    detail += " workers=" + std::to_string(workers) + (same ? ":same" : ":DIFFERS");
  }
  return {ok, detail};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"strong-anisotropy sweep", criterion1},
    {"weak-anisotropy sweep", criterion2},
    {"fixed-anisotropy regression", criterion3},
    {"moving-nucleus null result", criterion4},
    {"conservation", criterion5},
    {"integrator orders", criterion6},
    {"reversibility", criterion7},
    {"frame-rotation identities", criterion8},
    {"theory exactness", criterion9},
    {"sweep determinism", criterion10},
};

bool run_one(int n) {
  const auto& [name, fn] = kCriteria[n - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, error_class(e) + ": " + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", n,
              name, o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.passed;
}

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(kCriteria.size());
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <1..%d | all>\n", argv[0], count);
    return 2;
  }
  const std::string arg = argv[1];
  if (arg == "all") {
    bool ok = true;
    for (int n = 1; n <= count; ++n) ok = run_one(n) && ok;
    return ok ? 0 : 1;
  }
  int n = 0;
  try {
    n = std::stoi(arg);
  } catch (const std::exception&) {
  }
  if (n < 1 || n > count) {
    std::fprintf(stderr, "unknown criterion '%s'\n", arg.c_str());
    return 2;
  }
  return run_one(n) ? 0 : 1;
}
