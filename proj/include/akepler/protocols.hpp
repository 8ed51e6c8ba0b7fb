#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "akepler/geometry.hpp"

namespace akepler {

// Shape-preserving C^1 cubic through (x_i, y_i) (Fritsch-Carlson slopes).
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  // Value and first derivative; clamps to the end values outside the knots.
  double value(double x) const;
  double derivative(double x) const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, slope_;
};

struct ProtocolSample {
  double theta;
  double phi;
  double phi_dot;
};

struct ProtocolKnot {
  double t;
  double theta;
  double phi;
};

// Time dependence of the anisotropy axis. Outside [t_start, t_end] the axis
// is frozen at the nearest end value with phi_dot = 0.
class AnisotropyProtocol {
 public:
  struct Constant {
    double theta;
    double phi;
  };
  // phi(t) = pi (1 + tanh(t / tau)) on (-5 tau, 5 tau).
  struct TanhRamp {
    double theta;
    double tau;
  };
  struct KnotLoop {
    std::vector<ProtocolKnot> knots;
    MonotoneCubic theta_curve;
    MonotoneCubic phi_curve;
  };

  static AnisotropyProtocol constant(double theta, double phi = 0.0);
  static AnisotropyProtocol tanh_ramp(double theta, double tau);
  static AnisotropyProtocol knot_loop(std::vector<ProtocolKnot> knots);

  ProtocolSample eval(double t) const;

  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }

  const auto& variant() const noexcept { return shape_; }

 private:
  using Shape = std::variant<Constant, TanhRamp, KnotLoop>;
  AnisotropyProtocol(Shape shape, double t0, double t1)
      : shape_(std::move(shape)), t_start_(t0), t_end_(t1) {}

  Shape shape_;
  double t_start_ = -std::numeric_limits<double>::infinity();
  double t_end_ = std::numeric_limits<double>::infinity();
};

inline ProtocolSample eval_protocol(const AnisotropyProtocol& p, double t) {
  return p.eval(t);
}

// Residual |phi(+-5 tau) - {0, 2 pi}| = pi (1 - tanh 5) of the tanh ramp.
double tanh_ramp_closure_residual();

// Position of the Coulomb centre.
class NucleusPath {
 public:
  struct Static {
    Vec3 position;
  };
  // center + radius (cos(2 pi t / T) e1 + sin(2 pi t / T) e2), where (e1, e2)
  // spans the plane normal to `axis` and e2 = axis x e1.
  struct Circle {
    Vec3 center;
    double radius;
    double period;
    Vec3 axis;
    Vec3 e1;
    Vec3 e2;
  };

  static NucleusPath fixed(const Vec3& position = Vec3::Zero());
  static NucleusPath circle(const Vec3& center, double radius, double period,
                            const Vec3& axis = Vec3::UnitZ());

  Vec3 position(double t) const;
  Vec3 velocity(double t) const;

  // Loop period over orbital period; warns below 50. Static paths pass.
  bool check_adiabatic(double orbital_period) const;

  const auto& variant() const noexcept { return shape_; }

 private:
  using Shape = std::variant<Static, Circle>;
  explicit NucleusPath(Shape s) : shape_(std::move(s)) {}

  Shape shape_;
};

inline Vec3 nucleus_position(const NucleusPath& path, double t) {
  return path.position(t);
}

}  // namespace akepler
