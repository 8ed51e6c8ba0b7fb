#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "akepler/errors.hpp"
#include "akepler/protocols.hpp"

namespace akepler {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(TanhRamp, Values) {
  const double tau = 7.0;
  const auto p = AnisotropyProtocol::tanh_ramp(kPi / 3, tau);
  EXPECT_DOUBLE_EQ(p.eval(0).phi, kPi);
  EXPECT_DOUBLE_EQ(p.eval(0).phi_dot, kPi / tau);
  EXPECT_NEAR(p.eval(5 * tau).phi, 6.2829001, 1e-7);
  EXPECT_DOUBLE_EQ(p.eval(5 * tau).phi, kPi * (1 + std::tanh(5.0)));
  EXPECT_DOUBLE_EQ(p.eval(1.0).theta, kPi / 3);
  EXPECT_DOUBLE_EQ(p.t_start(), -5 * tau);
  EXPECT_DOUBLE_EQ(p.t_end(), 5 * tau);
}

TEST(TanhRamp, ClampsOutsideWindow) {
  const auto p = AnisotropyProtocol::tanh_ramp(1.0, 2.0);
  EXPECT_EQ(p.eval(-100).phi, p.eval(-10).phi);
  EXPECT_EQ(p.eval(-100).phi_dot, 0.0);
  EXPECT_EQ(p.eval(100).phi, p.eval(10).phi);
  EXPECT_EQ(p.eval(100).phi_dot, 0.0);
}

TEST(TanhRamp, ClosureResidual) {
  const double r = tanh_ramp_closure_residual();
  EXPECT_DOUBLE_EQ(r, kPi * (1 - std::tanh(5.0)));
  EXPECT_LT(r, 3e-4);
  const auto p = AnisotropyProtocol::tanh_ramp(1.0, 3.0);
  EXPECT_NEAR(p.eval(-15).phi, r, 1e-15);
  EXPECT_NEAR(2 * kPi - p.eval(15).phi, r, 1e-14);
}

TEST(TanhRamp, MonotoneAndDerivativeMatchesFiniteDifference) {
  const double tau = 4.0;
  const auto p = AnisotropyProtocol::tanh_ramp(0.5, tau);
  double prev = -1;
  const double h = 1e-5;
  for (double t = -5 * tau + 0.01; t < 5 * tau - 0.01; t += 0.173) {
    const auto s = p.eval(t);
    EXPECT_GE(s.phi, prev);
    prev = s.phi;
    const double fd = (p.eval(t + h).phi - p.eval(t - h).phi) / (2 * h);
    EXPECT_NEAR(fd, s.phi_dot, 1e-6 * std::max(s.phi_dot, 1e-3));
  }
}

TEST(Protocol, RejectsBadTheta) {
  EXPECT_THROW(AnisotropyProtocol::tanh_ramp(-0.1, 1.0), DomainError);
  EXPECT_THROW(AnisotropyProtocol::tanh_ramp(3.5, 1.0), DomainError);
  EXPECT_THROW(AnisotropyProtocol::tanh_ramp(1.0, 0.0), DomainError);
  EXPECT_THROW(AnisotropyProtocol::constant(4.0), DomainError);
}

TEST(KnotLoop, InterpolatesAndIsC1) {
  const auto p = AnisotropyProtocol::knot_loop({{0, 0.5, 0},
                                                {1, 0.7, 2},
                                                {2, 0.6, 4},
                                                {3, 0.5, 2 * kPi}});
  EXPECT_DOUBLE_EQ(p.eval(1).phi, 2.0);
  EXPECT_DOUBLE_EQ(p.eval(1).theta, 0.7);
  const double h = 1e-7;
  for (double t : {1.0, 2.0}) {
    const double left = p.eval(t - h).phi_dot, right = p.eval(t + h).phi_dot;
    EXPECT_NEAR(left, right, 1e-5);
  }
  EXPECT_EQ(p.eval(5).phi_dot, 0.0);
}

TEST(KnotLoop, RejectsOpenLoop) {
  EXPECT_THROW(AnisotropyProtocol::knot_loop({{0, 0.5, 0}, {1, 0.6, 2 * kPi}}),
               OpenLoop);
  EXPECT_THROW(AnisotropyProtocol::knot_loop({{0, 0.5, 0}, {1, 0.5, 1.0}}),
               OpenLoop);
}

TEST(MonotoneCubic, PreservesMonotoneData) {
  const MonotoneCubic c({0, 1, 2, 3, 4}, {0, 0.1, 0.1, 3, 3.2});
  double prev = -1;
  for (double x = 0; x <= 4; x += 0.01) {
    EXPECT_GE(c.value(x), prev - 1e-15);
    prev = c.value(x);
  }
  // Flat segment stays flat.
  EXPECT_DOUBLE_EQ(c.value(1.5), 0.1);
  EXPECT_THROW(MonotoneCubic({0, 0}, {1, 2}), DomainError);
  EXPECT_THROW(MonotoneCubic({0}, {1}), DomainError);
}

TEST(MonotoneCubic, ReproducesLinearData) {
  const MonotoneCubic c({0, 1, 3, 4}, {1, 3, 7, 9});
  for (double x = 0; x <= 4; x += 0.125) {
    EXPECT_NEAR(c.value(x), 1 + 2 * x, 1e-14);
    EXPECT_NEAR(c.derivative(x), 2.0, 1e-14);
  }
}

TEST(NucleusPath, StaticAndCircle) {
  EXPECT_EQ(NucleusPath::fixed().position(3.7), Vec3::Zero());
  const double T = 11.0;
  const auto c = NucleusPath::circle(Vec3::Zero(), 0.3, T);
  EXPECT_LT((c.position(0) - c.position(T)).norm(), 1e-14);
  const Vec3 q = c.position(T / 4);
  EXPECT_NEAR(q.norm(), 0.3, 1e-15);
  EXPECT_NEAR(q.z(), 0.0, 1e-15);
  EXPECT_LT((q - Vec3(0, 0.3, 0)).norm(), 1e-14);
  EXPECT_LT((nucleus_position(c, 0) - Vec3(0.3, 0, 0)).norm(), 1e-15);
}

TEST(NucleusPath, VelocityMatchesFiniteDifference) {
  const auto c = NucleusPath::circle(Vec3(1, 2, 3), 0.4, 9.0, Vec3(1, 1, 1));
  const double h = 1e-6;
  for (double t : {0.0, 1.3, 4.2}) {
    const Vec3 fd = (c.position(t + h) - c.position(t - h)) / (2 * h);
    EXPECT_LT((fd - c.velocity(t)).norm(), 1e-8);
    EXPECT_NEAR((c.position(t) - Vec3(1, 2, 3)).dot(Vec3(1, 1, 1)), 0.0, 1e-14);
  }
}

TEST(NucleusPath, AdiabaticWarning) {
  const auto c = NucleusPath::circle(Vec3::Zero(), 0.3, 10.0);
  EXPECT_FALSE(c.check_adiabatic(1.0));
  EXPECT_TRUE(c.check_adiabatic(0.1));
  EXPECT_TRUE(NucleusPath::fixed().check_adiabatic(1.0));
}

}  // namespace
}  // namespace akepler
