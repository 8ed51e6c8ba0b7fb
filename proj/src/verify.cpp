#include "akepler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "akepler/diagnostics.hpp"
#include "akepler/errors.hpp"
#include "akepler/geometry.hpp"
#include "akepler/hamiltonians.hpp"
#include "akepler/integrator.hpp"

namespace akepler {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Check at_most(std::string suite, std::string name, double value, double hi) {
  return {std::move(suite), std::move(name), value, -kInf, hi, value <= hi};
}

Check within(std::string suite, std::string name, double value, double lo,
             double hi) {
  return {std::move(suite), std::move(name), value, lo, hi,
          value >= lo && value <= hi};
}

// Eccentric bound orbit used throughout: E = -0.71875, e = 7/16.
PhaseState reference_state() {
  return {Vec3(1.0, 0.0, 0.0), Vec3(0.0, 0.75, 0.0)};
}

}  // namespace

std::vector<Check> verify_conservation(const VerifyOptions&) {
  const KeplerParams params{};
  const PhaseState s0 = reference_state();
  const OrbitElements el0 = orbit_elements(s0, params);
  const double T = el0.period;
  const IntegratorConfig cfg{Scheme::kYoshida3, T / 1000.0};

  const HamiltonianSpec kepler = HamiltonianSpec::kepler(params);
  const double e0 = el0.energy;
  const Vec3 l0 = el0.angular_momentum;
  const Vec3 a0 = el0.runge_lenz;
  double de = 0.0, dl = 0.0, da = 0.0, da_norm = 0.0;
  march(kepler, s0, 0.0, 100.0 * T, cfg,
        [&](std::int64_t, double t, const PhaseState& s) {
          de = std::max(de, std::abs(total_energy(kepler, s, t) - e0));
          const Vec3 a = runge_lenz(s, params);
          dl = std::max(dl, (angular_momentum(s) - l0).norm());
          da = std::max(da, (a - a0).norm());
          da_norm = std::max(da_norm, std::abs(a.norm() - a0.norm()));
        });

  // Tilted start so that L_z is not trivially conserved by the z = 0 plane.
  const HamiltonianSpec aniso = HamiltonianSpec::fixed_anisotropy(params, 0.2);
  const PhaseState t0{Vec3(1.0, 0.0, 0.3), Vec3(0.0, 0.75, 0.1)};
  const double lz0 = angular_momentum(t0).z();
  double dlz = 0.0;
  march(aniso, t0, 0.0, 100.0 * T, cfg,
        [&](std::int64_t, double, const PhaseState& s) {
          dlz = std::max(dlz, std::abs(angular_momentum(s).z() - lz0));
        });

  const std::string suite = "conservation";
  return {
      at_most(suite, "kepler |dE/E| over 100 orbits", de / std::abs(e0), 1e-7),
      at_most(suite, "kepler |dL|/|L| over 100 orbits", dl / l0.norm(), 1e-8),
      at_most(suite, "kepler |dA|/|A| over 100 orbits", da / a0.norm(), 1e-7),
      at_most(suite, "kepler d|A|/|A| over 100 orbits",
              da_norm / a0.norm(), 1e-7),
      at_most(suite, "fixed anisotropy |dLz/Lz| over 100 orbits",
              dlz / std::abs(lz0), 1e-7),
  };
}

std::vector<Check> verify_order(const VerifyOptions&) {
  const KeplerParams params{};
  const PhaseState s0 = reference_state();
  const double T = orbit_elements(s0, params).period;
  const HamiltonianSpec kepler = HamiltonianSpec::kepler(params);

  const double h[] = {T / 100.0, T / 200.0, T / 400.0, T / 800.0};
  const auto verlet = measure_order(kepler, s0, 0.0, T, Scheme::kVerlet2, h);
  const auto yoshida = measure_order(kepler, s0, 0.0, T, Scheme::kYoshida3, h);

  const std::string suite = "order";
  return {within(suite, "verlet2 measured order", verlet.order, 1.8, 2.2),
          within(suite, "yoshida3 measured order", yoshida.order, 3.0, kInf)};
}

std::vector<Check> verify_coriolis(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);

  double forms = 0.0, antisym = 0.0, ortho = 0.0, det = 0.0, deriv = 0.0;
  for (int i = 0; i < options.coriolis_samples; ++i) {
    const FrameAngles a{theta(rng), phi(rng)};
    const Vec3 P(unit(rng), unit(rng), unit(rng));
    const Vec3 r(unit(rng), unit(rng), unit(rng));
    const double phi_dot = unit(rng);

    forms = std::max(forms,
                     std::abs(std::abs(coriolis_correction(P, r, a, phi_dot)) -
                              std::abs(coriolis_correction_expanded(
                                  P, r, a, phi_dot))));
    const RotationMatrix R = rotation_matrix(a);
    const RotationMatrix G = frame_generator(a);
    antisym = std::max(antisym, (G + G.transpose()).cwiseAbs().maxCoeff());
    ortho = std::max(
        ortho, (R.transpose() * R - RotationMatrix::Identity()).cwiseAbs().maxCoeff());
    det = std::max(det, std::abs(R.determinant() - 1.0));

    // Analytic dR/dphi against a central difference.
    const double eps = 1e-6;
    const RotationMatrix fd = (rotation_matrix(FrameAngles{a.theta, a.phi + eps}) -
                               rotation_matrix(FrameAngles{a.theta, a.phi - eps})) /
                              (2.0 * eps);
    deriv = std::max(deriv, (fd - rotation_matrix_dphi(a)).cwiseAbs().maxCoeff());
  }

  const std::string suite = "coriolis";
  return {
      at_most(suite, "max |matrix - expanded| frame term", forms, 1e-12),
      at_most(suite, "max |G + G^T|, G = R^T dR/dphi", antisym, 1e-12),
      at_most(suite, "max |R^T R - I|", ortho, 1e-12),
      at_most(suite, "max |det R - 1|", det, 1e-12),
      at_most(suite, "max |dR/dphi - central difference|", deriv, 1e-8),
  };
}

std::vector<Check> verify_reversibility(const VerifyOptions&) {
  const KeplerParams params{};
  const PhaseState s0 = reference_state();
  const double T = orbit_elements(s0, params).period;
  constexpr double kSteps = 1e4;

  struct Case {
    const char* name;
    HamiltonianSpec spec;
    PhaseState start;
  };
  const Case cases[] = {
      {"kepler", HamiltonianSpec::kepler(params), s0},
      {"fixed anisotropy", HamiltonianSpec::fixed_anisotropy(params, 0.2),
       PhaseState{Vec3(1.0, 0.0, 0.01), Vec3(0.0, 0.75, 0.0)}},
  };

  std::vector<Check> out;
  for (const auto& c : cases) {
    for (Scheme scheme : {Scheme::kVerlet2, Scheme::kYoshida3}) {
      const IntegratorConfig cfg{scheme, T / 1000.0};
      const double span = kSteps * cfg.dt;
      PhaseState s = march(c.spec, c.start, 0.0, span, cfg).state;
      s.p = -s.p;
      s = march(c.spec, s, 0.0, span, cfg).state;
      s.p = -s.p;
      const double err = std::max((s.r - c.start.r).cwiseAbs().maxCoeff(),
                                  (s.p - c.start.p).cwiseAbs().maxCoeff());
      out.push_back(at_most("reversibility",
                            std::string(c.name) + " " +
                                std::string(to_string(scheme)) +
                                " max component error",
                            err, 1e-9));
    }
  }
  return out;
}

std::vector<Check> run_verify_suite(std::string_view suite,
                                    const VerifyOptions& options) {
  if (suite == "conservation") return verify_conservation(options);
  if (suite == "order") return verify_order(options);
  if (suite == "coriolis") return verify_coriolis(options);
  if (suite == "reversibility") return verify_reversibility(options);
  if (suite == "all") {
    std::vector<Check> all;
    for (auto part : {verify_conservation(options), verify_order(options),
                      verify_coriolis(options), verify_reversibility(options)}) {
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace akepler
