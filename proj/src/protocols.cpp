#include "akepler/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "akepler/errors.hpp"
#include "akepler/log.hpp"

namespace akepler {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRampHalfWidth = 5.0;  // in units of tau
constexpr double kClosureTol = 1e-9;

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
    throw DomainError("colatitude theta = " + std::to_string(theta) +
                      " outside [0, pi]");
  }
}

// One-sided three-point end slope, limited to preserve monotonicity.
double end_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (std::signbit(d) != std::signbit(m0) || m0 == 0.0) {
    d = 0.0;
  } else if (std::signbit(m0) != std::signbit(m1) &&
             std::abs(d) > std::abs(3.0 * m0)) {
    d = 3.0 * m0;
  }
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw DomainError("monotone cubic needs >= 2 matching knots");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw DomainError("knot abscissae must be strictly increasing");
    }
  }
  std::vector<double> h(n - 1), m(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    m[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = m[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (m[i - 1] * m[i] <= 0.0) continue;
    // Weighted harmonic mean.
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
  }
  slope_[0] = end_slope(h[0], h[1], m[0], m[1]);
  slope_[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  i = std::clamp<std::size_t>(i, 1, x_.size() - 1);
  return i - 1;
}

double MonotoneCubic::value(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] +
         h11 * h * slope_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double d00 = 6.0 * s * (s - 1.0);
  const double d10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d01 = -d00;
  const double d11 = s * (3.0 * s - 2.0);
  return d00 * y_[i] / h + d10 * slope_[i] + d01 * y_[i + 1] / h +
         d11 * slope_[i + 1];
}

AnisotropyProtocol AnisotropyProtocol::constant(double theta, double phi) {
  check_theta(theta);
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  return AnisotropyProtocol(Constant{theta, phi},
                            -std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity());
}

AnisotropyProtocol AnisotropyProtocol::tanh_ramp(double theta, double tau) {
  check_theta(theta);
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("ramp time tau must be positive");
  }
  return AnisotropyProtocol(TanhRamp{theta, tau}, -kRampHalfWidth * tau,
                            kRampHalfWidth * tau);
}

AnisotropyProtocol AnisotropyProtocol::knot_loop(
    std::vector<ProtocolKnot> knots) {
  if (knots.size() < 2) throw DomainError("knot loop needs >= 2 knots");
  std::vector<double> t, th, ph;
  for (const auto& k : knots) {
    check_theta(k.theta);
    if (!std::isfinite(k.phi) || !std::isfinite(k.t)) {
      throw DomainError("knot loop entries must be finite");
    }
    t.push_back(k.t);
    th.push_back(k.theta);
    ph.push_back(k.phi);
  }
  const double dtheta = th.back() - th.front();
  const double winding = (ph.back() - ph.front()) / (2.0 * kPi);
  if (std::abs(dtheta) > kClosureTol ||
      std::abs(winding - std::round(winding)) * 2.0 * kPi > kClosureTol) {
    throw OpenLoop("knot loop is not closed on the sphere");
  }
  const double t0 = t.front(), t1 = t.back();
  KnotLoop loop{std::move(knots), MonotoneCubic(t, std::move(th)),
                MonotoneCubic(t, std::move(ph))};
  // Shape preservation keeps theta inside the knot range, hence in [0, pi].
  return AnisotropyProtocol(std::move(loop), t0, t1);
}

ProtocolSample AnisotropyProtocol::eval(double t) const {
  const double tc = std::clamp(t, t_start_, t_end_);
  const bool inside = t >= t_start_ && t <= t_end_;
  return std::visit(
      [&](const auto& s) -> ProtocolSample {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Constant>) {
          return {s.theta, s.phi, 0.0};
        } else if constexpr (std::is_same_v<S, TanhRamp>) {
          const double x = tc / s.tau;
          const double th = std::tanh(x);
          const double sech2 = 1.0 - th * th;
          return {s.theta, kPi * (1.0 + th),
                  inside ? kPi / s.tau * sech2 : 0.0};
        } else {
          return {s.theta_curve.value(tc), s.phi_curve.value(tc),
                  inside ? s.phi_curve.derivative(tc) : 0.0};
        }
      },
      shape_);
}

double tanh_ramp_closure_residual() {
  return kPi * (1.0 - std::tanh(kRampHalfWidth));
}

NucleusPath NucleusPath::fixed(const Vec3& position) {
  return NucleusPath(Static{position});
}

NucleusPath NucleusPath::circle(const Vec3& center, double radius,
                                double period, const Vec3& axis) {
  if (!(radius >= 0.0)) throw DomainError("loop radius must be >= 0");
  if (!(period > 0.0)) throw DomainError("loop period must be positive");
  const double n = axis.norm();
  if (!(n > 0.0)) throw DomainError("loop axis must be nonzero");
  const Vec3 a = axis / n;
  // Seed with the coordinate axis least aligned with the normal, x first.
  Vec3 seed = Vec3::UnitX();
  if (std::abs(a.x()) > 0.9) seed = Vec3::UnitY();
  const Vec3 e1 = (seed - seed.dot(a) * a).normalized();
  const Vec3 e2 = a.cross(e1);
  return NucleusPath(Circle{center, radius, period, a, e1, e2});
}

Vec3 NucleusPath::position(double t) const {
  return std::visit(
      [&](const auto& s) -> Vec3 {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Static>) {
          return s.position;
        } else {
          const double w = 2.0 * kPi * t / s.period;
          return s.center + s.radius * (std::cos(w) * s.e1 + std::sin(w) * s.e2);
        }
      },
      shape_);
}

Vec3 NucleusPath::velocity(double t) const {
  return std::visit(
      [&](const auto& s) -> Vec3 {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Static>) {
          return Vec3::Zero();
        } else {
          const double k = 2.0 * kPi / s.period;
          const double w = k * t;
          return s.radius * k * (-std::sin(w) * s.e1 + std::cos(w) * s.e2);
        }
      },
      shape_);
}

bool NucleusPath::check_adiabatic(double orbital_period) const {
  const auto* c = std::get_if<Circle>(&shape_);
  if (c == nullptr) return true;
  const double ratio = c->period / orbital_period;
  if (ratio < 50.0) {
    warn("nucleus loop period is only " + std::to_string(ratio) +
         " orbital periods (< 50); adiabatic following is not assured");
    return false;
  }
  return true;
}

}  // namespace akepler
