#pragma once

#include <vector>

#include "akepler/geometry.hpp"
#include "akepler/protocols.hpp"

namespace akepler {

// Closed-form predictions for the dipole rotation after a closed adiabatic
// loop of the anisotropy axis.

// Area swept by a constant-colatitude loop: 2 pi (1 - cos theta).
double solid_angle_const_theta(double theta);

// cos(2 pi (1 - cos theta)): predicted cosine of the apsis rotation angle.
double predicted_cos_phi(double theta);

// Ordered (theta, phi) samples with phi unwrapped.
class LoopOnSphere {
 public:
  explicit LoopOnSphere(std::vector<FrameAngles> samples);

  // Samples `count` points of the protocol uniformly over [t0, t1].
  static LoopOnSphere from_protocol(const AnisotropyProtocol& protocol,
                                    double t0, double t1, std::size_t count);

  const std::vector<FrameAngles>& samples() const noexcept { return samples_; }
  // theta_first == theta_last and phi_last - phi_first in 2 pi Z (1e-9).
  bool closed() const noexcept { return closed_; }
  // Net number of turns about the pole.
  long winding() const noexcept { return winding_; }

 private:
  std::vector<FrameAngles> samples_;
  bool closed_ = false;
  long winding_ = 0;
};

// Trapezoidal loop integral of cos(theta) dphi. Throws OpenLoop.
double hannay_shift(const LoopOnSphere& loop);

// Trapezoidal loop integral of (1 - cos(theta)) dphi; the predicted rotation
// of the apsis line in the fixed frame. Throws OpenLoop.
double predicted_rotation(const LoopOnSphere& loop);

// Out-of-plane trap frequency e k / (sqrt(2) m w) of a standing wave.
double ponderomotive_omega0(double charge, double wavenumber, double mass,
                            double field_frequency);
// e^2 E0^2 / (4 m w^2).
double ponderomotive_potential(double charge, double field_amplitude,
                               double mass, double field_frequency);

}  // namespace akepler
