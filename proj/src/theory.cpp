#include "akepler/theory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "akepler/errors.hpp"
#include "akepler/log.hpp"

namespace akepler {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClosureTol = 1e-9;
constexpr double kMinSamplesPerWinding = 64.0;

void check_colatitude(double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    throw DomainError("theta = " + std::to_string(theta) +
                      " outside [0, pi]");
  }
}

template <typename Integrand>
double loop_integral(const LoopOnSphere& loop, Integrand&& g) {
  if (!loop.closed()) throw OpenLoop("loop on the sphere is not closed");
  const auto& s = loop.samples();
  double sum = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    sum += 0.5 * (g(s[i - 1].theta) + g(s[i].theta)) * (s[i].phi - s[i - 1].phi);
  }
  return sum;
}

}  // namespace

double solid_angle_const_theta(double theta) {
  check_colatitude(theta);
  return kTwoPi * (1.0 - std::cos(theta));
}

double predicted_cos_phi(double theta) {
  return std::cos(solid_angle_const_theta(theta));
}

LoopOnSphere::LoopOnSphere(std::vector<FrameAngles> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("loop needs >= 2 samples");
  for (const auto& a : samples_) {
    check_colatitude(a.theta);
    if (!std::isfinite(a.phi)) throw DomainError("phi must be finite");
  }
  const double dphi = samples_.back().phi - samples_.front().phi;
  const double turns = std::round(dphi / kTwoPi);
  closed_ =
      std::abs(samples_.back().theta - samples_.front().theta) <= kClosureTol &&
      std::abs(dphi - turns * kTwoPi) <= kClosureTol;
  winding_ = static_cast<long>(turns);

  double travel = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    travel += std::abs(samples_[i].phi - samples_[i - 1].phi);
  }
  const double windings = travel / kTwoPi;
  if (windings > 0.0 &&
      static_cast<double>(samples_.size()) / windings < kMinSamplesPerWinding) {
    warn("loop has fewer than 64 samples per winding; quadrature is coarse");
  }
}

LoopOnSphere LoopOnSphere::from_protocol(const AnisotropyProtocol& protocol,
                                         double t0, double t1,
                                         std::size_t count) {
  if (count < 2) throw DomainError("need >= 2 samples");
  std::vector<FrameAngles> s;
  s.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t =
        t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
    const auto p = protocol.eval(t);
    s.push_back({p.theta, p.phi});
  }
  return LoopOnSphere(std::move(s));
}

double hannay_shift(const LoopOnSphere& loop) {
  return loop_integral(loop, [](double th) { return std::cos(th); });
}

double predicted_rotation(const LoopOnSphere& loop) {
  return loop_integral(loop, [](double th) { return 1.0 - std::cos(th); });
}

double ponderomotive_omega0(double charge, double wavenumber, double mass,
                            double field_frequency) {
  if (!(charge > 0.0) || !(wavenumber > 0.0) || !(mass > 0.0) ||
      !(field_frequency > 0.0)) {
    throw DomainError("ponderomotive inputs must be positive");
  }
  return charge * wavenumber / (std::numbers::sqrt2 * mass * field_frequency);
}

double ponderomotive_potential(double charge, double field_amplitude,
                               double mass, double field_frequency) {
  if (!(charge > 0.0) || !(mass > 0.0) || !(field_frequency > 0.0)) {
    throw DomainError("ponderomotive inputs must be positive");
  }
  return charge * charge * field_amplitude * field_amplitude /
         (4.0 * mass * field_frequency * field_frequency);
}

}  // namespace akepler
