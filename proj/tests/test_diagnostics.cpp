#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "akepler/diagnostics.hpp"
#include "akepler/errors.hpp"
#include "akepler/integrator.hpp"

namespace akepler {
namespace {

constexpr double kPi = std::numbers::pi;
const PhaseState kReference{Vec3(1, 0, 0), Vec3(0, 0.75, 0)};

TEST(RungeLenz, ReferenceOrbit) {
  EXPECT_EQ(runge_lenz(kReference, {}), Vec3(-7.0 / 16.0, 0, 0));
}

TEST(RungeLenz, CircularOrbitVanishes) {
  EXPECT_LT(runge_lenz({Vec3(1, 0, 0), Vec3(0, 1, 0)}, {}).norm(), 1e-16);
  EXPECT_THROW(runge_lenz({Vec3::Zero(), Vec3(0, 1, 0)}, {}), ZeroRadius);
}

TEST(RungeLenz, ConservedAlongKeplerFlow) {
  const auto spec = HamiltonianSpec::kepler({});
  const double T = orbit_elements(kReference, {}).period;
  const Vec3 a0 = runge_lenz(kReference, {});
  const auto traj = integrate(spec, kReference, 0, 3 * T,
                              {Scheme::kYoshida3, T / 2000}, Sampling::every(7));
  for (const auto& s : traj.states) {
    EXPECT_LE((runge_lenz(s, {}) - a0).norm() / a0.norm(), 1e-7);
  }
}

TEST(Elements, ReferenceOrbit) {
  const auto el = orbit_elements(kReference, {});
  EXPECT_DOUBLE_EQ(el.energy, -0.71875);
  EXPECT_NEAR(el.semi_major, 16.0 / 23.0, 1e-15);
  EXPECT_NEAR(el.eccentricity, 7.0 / 16.0, 1e-15);
  EXPECT_NEAR(el.period, 3.6456, 1e-4);
  EXPECT_NEAR(el.semi_major * (1 + el.eccentricity), 1.0, 1e-15);
  EXPECT_LT((el.apogee_dir() - Vec3(1, 0, 0)).norm(), 1e-15);
  EXPECT_LT((el.perigee_dir() - Vec3(-1, 0, 0)).norm(), 1e-15);
}

TEST(Elements, Errors) {
  const auto circ = orbit_elements({Vec3(1, 0, 0), Vec3(0, 1, 0)}, {});
  EXPECT_NEAR(circ.eccentricity, 0.0, 1e-15);
  EXPECT_THROW(circ.apogee_dir(), DegenerateApsis);
  EXPECT_THROW(orbit_elements({Vec3(1, 0, 0), Vec3(0, 1.5, 0)}, {}), UnboundOrbit);
}

TEST(Elements, InvariantsOnRandomBoundStates) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  const KeplerParams params{1.7, 0.6};
  int checked = 0;
  while (checked < 100) {
    const PhaseState s{Vec3(u(rng), u(rng), u(rng)),
                       Vec3(u(rng), u(rng), u(rng))};
    if (s.r.norm() < 0.2) continue;
    const double e_kin = s.p.squaredNorm() / (2 * params.m);
    const double energy = e_kin - params.q / s.r.norm();
    if (energy > -1e-3) continue;
    const auto el = orbit_elements(s, params);
    const double l2 = el.angular_momentum.squaredNorm();
    const double e_ref =
        std::sqrt(std::max(0.0, 1 + 2 * energy * l2 /
                                        (params.m * params.q * params.q)));
    EXPECT_NEAR(el.runge_lenz.norm(), params.m * params.q * el.eccentricity, 1e-10);
    EXPECT_NEAR(el.eccentricity, e_ref, 1e-10);
    EXPECT_NEAR(el.semi_major, -params.q / (2 * energy), 1e-10);
    EXPECT_NEAR(el.runge_lenz.dot(el.angular_momentum), 0.0, 1e-10);
    ++checked;
  }
}

TEST(Elements, PeriodMatchesMeasuredRadialPeriod) {
  const auto spec = HamiltonianSpec::kepler({});
  const double T = orbit_elements(kReference, {}).period;
  const double h = T / 20000;
  // Perigee passages: local minima of |r|, refined by a parabola through
  // the three neighbouring samples.
  std::vector<double> r, t, minima;
  march(spec, kReference, 0, 3.2 * T, {Scheme::kYoshida3, h},
        [&](std::int64_t, double time, const PhaseState& s) {
          r.push_back(s.r.norm());
          t.push_back(time);
        });
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (r[i] < r[i - 1] && r[i] <= r[i + 1]) {
      const double denom = r[i - 1] - 2 * r[i] + r[i + 1];
      minima.push_back(t[i] + 0.5 * h * (r[i - 1] - r[i + 1]) / denom);
    }
  }
  ASSERT_GE(minima.size(), 3u);
  const double measured = (minima[2] - minima[0]) / 2;
  EXPECT_NEAR(measured / T, 1.0, 1e-4);
}

TEST(DipoleRotation, Values) {
  const Vec3 a(0.3, -0.2, 0.1);
  EXPECT_DOUBLE_EQ(dipole_rotation(a, a).cos_phi, 1.0);
  EXPECT_DOUBLE_EQ(dipole_rotation(a, -a).cos_phi, -1.0);
  const Vec3 x(1, 0, 0);
  const Vec3 turned = Eigen::AngleAxisd(kPi / 3, Vec3::UnitZ()) * x;
  const auto rot = dipole_rotation(x, turned);
  EXPECT_NEAR(rot.cos_phi, 0.5, 1e-15);
  EXPECT_NEAR(rot.signed_phi_in_plane, kPi / 3, 1e-15);
  EXPECT_NEAR(dipole_rotation(turned, x).signed_phi_in_plane, -kPi / 3, 1e-15);
  EXPECT_THROW(dipole_rotation(Vec3::Zero(), x), ZeroVector);
}

TEST(DipoleRotation, RandomAxes) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 1), ang(0, kPi);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = Vec3(u(rng), u(rng), u(rng)).normalized();
    const Vec3 n = a.cross(Vec3(u(rng), u(rng), u(rng))).normalized();
    const double alpha = ang(rng);
    const Vec3 b = Eigen::AngleAxisd(alpha, n) * a;
    EXPECT_NEAR(dipole_rotation(a, 2.5 * b, n).cos_phi, std::cos(alpha), 1e-12);
  }
}

TEST(Stroboscopic, OnePeriod) {
  const auto spec = HamiltonianSpec::kepler({});
  const auto traj = integrate(spec, kReference, 0, 2.0, {Scheme::kVerlet2, 0.01},
                              Sampling::every(1));
  const auto s = stroboscopic(traj, 2.0);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].first, 0);
  EXPECT_EQ(s[1].first, 1);
  EXPECT_EQ(s[1].second.r, traj.states.back().r);
}

TEST(PlaneNormal, Values) {
  EXPECT_EQ(plane_normal(kReference), Vec3(0, 0, 1));
  EXPECT_EQ(plane_normal({Vec3(1, 0, 0), Vec3(0, 0, 0.75)}), Vec3(0, -1, 0));
  EXPECT_THROW(plane_normal({Vec3(1, 0, 0), Vec3(2, 0, 0)}), ZeroAngularMomentum);
}

}  // namespace
}  // namespace akepler
