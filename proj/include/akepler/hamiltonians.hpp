#pragma once

#include <optional>
#include <string_view>

#include "akepler/geometry.hpp"
#include "akepler/protocols.hpp"

namespace akepler {

struct PhaseState {
  Vec3 r = Vec3::Zero();
  Vec3 p = Vec3::Zero();
};

// Electron mass m and Coulomb strength Q (V = -Q / |r|). Q = 0 switches the
// Coulomb term off, which the tests use for free and harmonic limits.
struct KeplerParams {
  double m = 1.0;
  double q = 1.0;
};

enum class Variant {
  kMovingNucleus,       // -Q / |r - R(t)|
  kFixedAnisotropy,     // -Q / |r| + m w0^2 z^2 / 2
  kRotatingAnisotropy,  // -Q / |r| + m w0^2 (Z-hat(t) . r)^2 / 2
};

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

inline constexpr double kDefaultRMinGuard = 1e-3;

// Immutable description of the system being integrated. Use the factories;
// they enforce the per-variant invariants.
class HamiltonianSpec {
 public:
  static HamiltonianSpec moving_nucleus(KeplerParams params, NucleusPath path,
                                        double r_min_guard = kDefaultRMinGuard);
  // Static Coulomb centre at the origin.
  static HamiltonianSpec kepler(KeplerParams params,
                                double r_min_guard = kDefaultRMinGuard);
  static HamiltonianSpec fixed_anisotropy(
      KeplerParams params, double omega0,
      double r_min_guard = kDefaultRMinGuard);
  static HamiltonianSpec rotating_anisotropy(
      KeplerParams params, double omega0, AnisotropyProtocol protocol,
      double r_min_guard = kDefaultRMinGuard);

  Variant variant() const noexcept { return variant_; }
  const KeplerParams& kepler_params() const noexcept { return params_; }
  double omega0() const noexcept { return omega0_; }
  double r_min_guard() const noexcept { return r_min_guard_; }
  const std::optional<AnisotropyProtocol>& protocol() const noexcept {
    return protocol_;
  }
  const std::optional<NucleusPath>& nucleus_path() const noexcept {
    return path_;
  }

  // True when V does not depend on t.
  bool is_static() const;

  // Coulomb centre at time t (origin for the anisotropic variants).
  Vec3 center(double t) const;
  // Easy-axis direction at time t (z-hat for the fixed variant).
  Vec3 axis(double t) const;

 private:
  HamiltonianSpec() = default;

  Variant variant_ = Variant::kMovingNucleus;
  KeplerParams params_{};
  double omega0_ = 0.0;
  double r_min_guard_ = kDefaultRMinGuard;
  std::optional<AnisotropyProtocol> protocol_;
  std::optional<NucleusPath> path_;
};

// Throw MinRadiusViolation when the Coulomb distance falls below the guard.
double potential_energy(const HamiltonianSpec& spec, const Vec3& r, double t);
Vec3 force(const HamiltonianSpec& spec, const Vec3& r, double t);
double kinetic_energy(const KeplerParams& params, const Vec3& p);
double total_energy(const HamiltonianSpec& spec, const PhaseState& state,
                    double t);

}  // namespace akepler
