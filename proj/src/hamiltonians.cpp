#include "akepler/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "akepler/errors.hpp"

namespace akepler {
namespace {

void check_params(const KeplerParams& p, double guard) {
  if (!(p.m > 0.0) || !std::isfinite(p.m)) {
    throw DomainError("mass m must be positive");
  }
  if (!(p.q >= 0.0) || !std::isfinite(p.q)) {
    throw DomainError("Coulomb strength q must be non-negative");
  }
  if (!(guard > 0.0)) throw DomainError("r_min_guard must be positive");
}

void check_omega0(double w) {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DomainError("omega0 must be finite and non-negative");
  }
}

// Coulomb distance check; skipped when the Coulomb term is off.
double guarded_norm(const HamiltonianSpec& spec, const Vec3& d, double t) {
  const double n = d.norm();
  if (spec.kepler_params().q > 0.0 && !(n > spec.r_min_guard())) {
    throw MinRadiusViolation(t, n, spec.r_min_guard());
  }
  return n;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kMovingNucleus:
      return "moving_nucleus";
    case Variant::kFixedAnisotropy:
      return "fixed_anisotropy";
    case Variant::kRotatingAnisotropy:
      return "rotating_anisotropy";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view name) {
  if (name == "moving_nucleus") return Variant::kMovingNucleus;
  if (name == "fixed_anisotropy") return Variant::kFixedAnisotropy;
  if (name == "rotating_anisotropy") return Variant::kRotatingAnisotropy;
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

HamiltonianSpec HamiltonianSpec::moving_nucleus(KeplerParams params,
                                                NucleusPath path,
                                                double r_min_guard) {
  check_params(params, r_min_guard);
  HamiltonianSpec s;
  s.variant_ = Variant::kMovingNucleus;
  s.params_ = params;
  s.r_min_guard_ = r_min_guard;
  s.path_ = std::move(path);
  return s;
}

HamiltonianSpec HamiltonianSpec::kepler(KeplerParams params,
                                        double r_min_guard) {
  return moving_nucleus(params, NucleusPath::fixed(), r_min_guard);
}

HamiltonianSpec HamiltonianSpec::fixed_anisotropy(KeplerParams params,
                                                  double omega0,
                                                  double r_min_guard) {
  check_params(params, r_min_guard);
  check_omega0(omega0);
  HamiltonianSpec s;
  s.variant_ = Variant::kFixedAnisotropy;
  s.params_ = params;
  s.omega0_ = omega0;
  s.r_min_guard_ = r_min_guard;
  return s;
}

HamiltonianSpec HamiltonianSpec::rotating_anisotropy(
    KeplerParams params, double omega0, AnisotropyProtocol protocol,
    double r_min_guard) {
  check_params(params, r_min_guard);
  check_omega0(omega0);
  HamiltonianSpec s;
  s.variant_ = Variant::kRotatingAnisotropy;
  s.params_ = params;
  s.omega0_ = omega0;
  s.r_min_guard_ = r_min_guard;
  s.protocol_ = std::move(protocol);
  return s;
}

bool HamiltonianSpec::is_static() const {
  switch (variant_) {
    case Variant::kMovingNucleus:
      return std::holds_alternative<NucleusPath::Static>(path_->variant());
    case Variant::kFixedAnisotropy:
      return true;
    case Variant::kRotatingAnisotropy:
      return omega0_ == 0.0 ||
             std::holds_alternative<AnisotropyProtocol::Constant>(
                 protocol_->variant());
  }
  return false;
}

Vec3 HamiltonianSpec::center(double t) const {
  if (variant_ == Variant::kMovingNucleus) return path_->position(t);
  return Vec3::Zero();
}

Vec3 HamiltonianSpec::axis(double t) const {
  if (variant_ == Variant::kRotatingAnisotropy) {
    const auto s = protocol_->eval(t);
    return anisotropy_axis(FrameAngles{s.theta, s.phi});
  }
  return Vec3::UnitZ();
}

double potential_energy(const HamiltonianSpec& spec, const Vec3& r, double t) {
  const auto& kp = spec.kepler_params();
  if (spec.variant() == Variant::kMovingNucleus) {
    const Vec3 d = r - spec.center(t);
    const double n = guarded_norm(spec, d, t);
    return kp.q > 0.0 ? -kp.q / n : 0.0;
  }
  const double n = guarded_norm(spec, r, t);
  const double coulomb = kp.q > 0.0 ? -kp.q / n : 0.0;
  const double w2 = spec.omega0() * spec.omega0();
  const double Z = spec.axis(t).dot(r);
  return coulomb + 0.5 * kp.m * w2 * Z * Z;
}

Vec3 force(const HamiltonianSpec& spec, const Vec3& r, double t) {
  const auto& kp = spec.kepler_params();
  if (spec.variant() == Variant::kMovingNucleus) {
    const Vec3 d = r - spec.center(t);
    const double n = guarded_norm(spec, d, t);
    if (kp.q == 0.0) return Vec3::Zero();
    return (-kp.q / (n * n * n)) * d;
  }
  const double n = guarded_norm(spec, r, t);
  Vec3 f = Vec3::Zero();
  if (kp.q > 0.0) f = (-kp.q / (n * n * n)) * r;
  if (spec.omega0() != 0.0) {
    const Vec3 axis = spec.axis(t);
    f -= kp.m * spec.omega0() * spec.omega0() * axis.dot(r) * axis;
  }
  return f;
}

double kinetic_energy(const KeplerParams& params, const Vec3& p) {
  return p.squaredNorm() / (2.0 * params.m);
}

double total_energy(const HamiltonianSpec& spec, const PhaseState& state,
                    double t) {
  return kinetic_energy(spec.kepler_params(), state.p) +
         potential_energy(spec, state.r, t);
}

}  // namespace akepler
