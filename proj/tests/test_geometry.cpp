#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "akepler/geometry.hpp"

namespace akepler {
namespace {

constexpr double kPi = std::numbers::pi;

FrameAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.0, kPi), ph(-10.0, 10.0);
  return {th(rng), ph(rng)};
}

Vec3 random_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng)};
}

TEST(RotationMatrix, PoleIsIdentity) {
  EXPECT_TRUE(rotation_matrix(FrameAngles{0.0, 0.0}).isApprox(
      RotationMatrix::Identity(), 1e-15));
}

TEST(RotationMatrix, EquatorRows) {
  RotationMatrix expected;
  expected << 1, 0, 0, 0, 0, 1, 0, -1, 0;
  const RotationMatrix R = rotation_matrix(FrameAngles{kPi / 2, 0.0});
  EXPECT_LT((R - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RotationMatrix, OrthogonalWithUnitDeterminant) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const RotationMatrix R = rotation_matrix(random_angles(rng));
    EXPECT_LT((R.transpose() * R - RotationMatrix::Identity()).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
  }
}

TEST(RotationMatrix, AnalyticDerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(11);
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const FrameAngles a = random_angles(rng);
    const RotationMatrix fd =
        (rotation_matrix(FrameAngles{a.theta, a.phi + h}) -
         rotation_matrix(FrameAngles{a.theta, a.phi - h})) /
        (2 * h);
    EXPECT_LT((fd - rotation_matrix_dphi(a)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(RotationMatrix, GeneratorIsAntisymmetric) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const FrameAngles a = random_angles(rng);
    const RotationMatrix G =
        rotation_matrix(a).transpose() * rotation_matrix_dphi(a);
    EXPECT_LT((G + G.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((G - frame_generator(a)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AnisotropyAxis, Values) {
  EXPECT_LT((anisotropy_axis(FrameAngles{0.0, 1.234}) - Vec3::UnitZ()).norm(),
            1e-15);
  EXPECT_LT((anisotropy_axis(FrameAngles{kPi / 2, 0.0}) - Vec3::UnitY()).norm(),
            1e-15);
  EXPECT_LT(
      (anisotropy_axis(FrameAngles{kPi / 2, kPi / 2}) - Vec3::UnitX()).norm(),
      1e-15);
}

TEST(AnisotropyAxis, IsImageOfZUnderRotation) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const FrameAngles a = random_angles(rng);
    EXPECT_LT((rotation_matrix(a) * Vec3::UnitZ() - anisotropy_axis(a)).norm(),
              1e-14);
  }
}

TEST(AnisotropyAxis, WorksForOtherScalars) {
  const FrameAnglesT<long double> a{0.5L, 0.25L};
  const Vec3T<long double> z = anisotropy_axis(a);
  EXPECT_NEAR(static_cast<double>(z.norm()), 1.0, 1e-18);
  const Mat3T<float> R = rotation_matrix(FrameAnglesT<float>{0.5f, 0.25f});
  EXPECT_NEAR((R.transpose() * R - Mat3T<float>::Identity()).norm(), 0.0, 1e-6);
}

TEST(Coriolis, VanishesWithoutDrive) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(coriolis_correction(random_vec(rng), random_vec(rng),
                                  random_angles(rng), 0.0),
              0.0);
  }
}

TEST(Coriolis, PoleValue) {
  const double v = coriolis_correction(Vec3(0, 1, 0), Vec3(1, 0, 0),
                                       FrameAngles{0.0, 0.0}, 1.0);
  EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Coriolis, MatrixFormMatchesExpansion) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const Vec3 P = random_vec(rng), r = random_vec(rng);
    const FrameAngles a = random_angles(rng);
    const double w = std::uniform_real_distribution<double>(-3, 3)(rng);
    const double m = coriolis_correction(P, r, a, w);
    const double e = coriolis_correction_expanded(P, r, a, w);
    EXPECT_NEAR(std::abs(m), std::abs(e), 1e-12);
    EXPECT_NEAR(m, e, 1e-12);
  }
}

TEST(Coriolis, PrintedExpansionAgreesOnlyOnSpecialInputs) {
  const Vec3 P(0.3, -0.7, 1.1);
  // X == Y: the Pz X and Pz Y terms coincide.
  const Vec3 r_xy(0.4, 0.4, -0.9);
  const FrameAngles a{1.0, 0.3};
  EXPECT_NEAR(coriolis_correction(P, r_xy, a, 1.0),
              coriolis_correction_as_printed(P, r_xy, a, 1.0), 1e-14);
  // sin theta = 0: the term drops out.
  const Vec3 r(0.4, -0.2, 0.5);
  EXPECT_NEAR(coriolis_correction(P, r, FrameAngles{0.0, 0.3}, 1.0),
              coriolis_correction_as_printed(P, r, FrameAngles{0.0, 0.3}, 1.0),
              1e-14);
  // Generic input: the literal form is off by sin t Pz (X - Y) phi_dot.
  const double diff = coriolis_correction(P, r, a, 1.0) -
                      coriolis_correction_as_printed(P, r, a, 1.0);
  EXPECT_NEAR(diff, std::sin(1.0) * P.z() * (r.x() - r.y()), 1e-14);
  EXPECT_GT(std::abs(diff), 0.1);
}

TEST(Coriolis, Bilinear) {
  std::mt19937_64 rng(29);
  const FrameAngles a = random_angles(rng);
  const Vec3 P1 = random_vec(rng), P2 = random_vec(rng), r1 = random_vec(rng),
             r2 = random_vec(rng);
  const double c = 1.7;
  EXPECT_NEAR(coriolis_correction(P1, r1, a, c * 0.4),
              c * coriolis_correction(P1, r1, a, 0.4), 1e-13);
  EXPECT_NEAR(coriolis_correction(Vec3(P1 + c * P2), r1, a, 0.4),
              coriolis_correction(P1, r1, a, 0.4) +
                  c * coriolis_correction(P2, r1, a, 0.4),
              1e-13);
  EXPECT_NEAR(coriolis_correction(P1, Vec3(r1 + c * r2), a, 0.4),
              coriolis_correction(P1, r1, a, 0.4) +
                  c * coriolis_correction(P1, r2, a, 0.4),
              1e-13);
}

}  // namespace
}  // namespace akepler
