#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace akepler {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3T = Eigen::Matrix<Scalar, 3, 3>;

using Vec3 = Vec3T<double>;
using RotationMatrix = Mat3T<double>;

// Orientation of the anisotropy axis. theta is the colatitude in [0, pi];
// phi is the azimuth, kept unwrapped so that loop windings stay countable.
template <typename Scalar>
struct FrameAnglesT {
  Scalar theta{0};
  Scalar phi{0};
};
using FrameAngles = FrameAnglesT<double>;

// Unit anisotropy axis (sin t sin p, sin t cos p, cos t). Note the azimuth is
// measured from +y towards +x.
template <typename Scalar>
Vec3T<Scalar> anisotropy_axis(const FrameAnglesT<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar st = sin(a.theta);
  return Vec3T<Scalar>(st * sin(a.phi), st * cos(a.phi), cos(a.theta));
}

// Maps rotated-frame coordinates (X, Y, Z) to fixed-frame (x, y, z). Columns
// are the in-plane unit vectors e_phi, e_theta and the axis Z-hat.
template <typename Scalar>
Mat3T<Scalar> rotation_matrix(const FrameAnglesT<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar ct = cos(a.theta), st = sin(a.theta);
  const Scalar cp = cos(a.phi), sp = sin(a.phi);
  Mat3T<Scalar> r;
  // clang-format off
  r <<  cp, ct * sp, st * sp,
       -sp, ct * cp, st * cp,
       Scalar(0), -st, ct;
  // clang-format on
  return r;
}

// Entry-wise analytic derivative of rotation_matrix with respect to phi.
template <typename Scalar>
Mat3T<Scalar> rotation_matrix_dphi(const FrameAnglesT<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar ct = cos(a.theta), st = sin(a.theta);
  const Scalar cp = cos(a.phi), sp = sin(a.phi);
  Mat3T<Scalar> d;
  // clang-format off
  d << -sp,  ct * cp,  st * cp,
       -cp, -ct * sp, -st * sp,
       Scalar(0), Scalar(0), Scalar(0);
  // clang-format on
  return d;
}

// R^T dR/dphi; antisymmetric since R is orthogonal for every phi.
template <typename Scalar>
Mat3T<Scalar> frame_generator(const FrameAnglesT<Scalar>& a) {
  return rotation_matrix(a).transpose() * rotation_matrix_dphi(a);
}

// Hamiltonian correction picked up in the rotating frame when phi moves:
//   dH = -P . R^T (dR/dphi) r * phi_dot
// with P and r the rotated-frame momentum and position.
template <typename Scalar>
Scalar coriolis_correction(const Vec3T<Scalar>& P, const Vec3T<Scalar>& r,
                           const FrameAnglesT<Scalar>& a, Scalar phi_dot) {
  return -P.dot(frame_generator(a) * r) * phi_dot;
}

// Same quantity written out in components:
//   {cos t (Py X - Px Y) - sin t (Px Z - Pz X)} phi_dot.
// The commonly quoted expansion has Pz Y in the last term; that form only
// agrees with the matrix form when X == Y or sin t == 0 (see
// coriolis_correction_as_printed).
template <typename Scalar>
Scalar coriolis_correction_expanded(const Vec3T<Scalar>& P,
                                    const Vec3T<Scalar>& r,
                                    const FrameAnglesT<Scalar>& a,
                                    Scalar phi_dot) {
  using std::cos;
  using std::sin;
  const Scalar X = r.x(), Y = r.y(), Z = r.z();
  return (cos(a.theta) * (P.y() * X - P.x() * Y) -
          sin(a.theta) * (P.x() * Z - P.z() * X)) *
         phi_dot;
}

// Literal transcription with the Pz Y term, kept for cross-checks only.
template <typename Scalar>
Scalar coriolis_correction_as_printed(const Vec3T<Scalar>& P,
                                      const Vec3T<Scalar>& r,
                                      const FrameAnglesT<Scalar>& a,
                                      Scalar phi_dot) {
  using std::cos;
  using std::sin;
  const Scalar X = r.x(), Y = r.y(), Z = r.z();
  return (cos(a.theta) * (P.y() * X - P.x() * Y) -
          sin(a.theta) * (P.x() * Z - P.z() * Y)) *
         phi_dot;
}

}  // namespace akepler
