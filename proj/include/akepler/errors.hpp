#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace akepler {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes: InputError -> 2, everything else -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: out-of-domain parameters, malformed configs.
class InputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class OpenLoop : public InputError {
 public:
  using InputError::InputError;
};

// Electron came closer to the Coulomb centre than the configured guard.
class MinRadiusViolation : public Error {
 public:
  MinRadiusViolation(double t, double radius, double guard)
      : Error("MinRadiusViolation: |r| = " + std::to_string(radius) +
              " below guard " + std::to_string(guard) +
              " at t = " + std::to_string(t)),
        t_(t),
        radius_(radius) {}

  double time() const noexcept { return t_; }
  double radius() const noexcept { return radius_; }

 private:
  double t_;
  double radius_;
};

class StepBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ZeroRadius : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class ZeroAngularMomentum : public Error {
 public:
  using Error::Error;
};

class UnboundOrbit : public Error {
 public:
  using Error::Error;
};

class DegenerateApsis : public Error {
 public:
  using Error::Error;
};

class EmptyResult : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Class name of a library error, "InternalError" for anything else. Used as
// the error code column of sweep rows.
inline std::string error_class(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const OpenLoop*>(&e)) return "OpenLoop";
  if (dynamic_cast<const MinRadiusViolation*>(&e)) return "MinRadiusViolation";
  if (dynamic_cast<const StepBudgetExceeded*>(&e)) return "StepBudgetExceeded";
  if (dynamic_cast<const ZeroRadius*>(&e)) return "ZeroRadius";
  if (dynamic_cast<const ZeroVector*>(&e)) return "ZeroVector";
  if (dynamic_cast<const ZeroAngularMomentum*>(&e)) return "ZeroAngularMomentum";
  if (dynamic_cast<const UnboundOrbit*>(&e)) return "UnboundOrbit";
  if (dynamic_cast<const DegenerateApsis*>(&e)) return "DegenerateApsis";
  if (dynamic_cast<const EmptyResult*>(&e)) return "EmptyResult";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "InternalError";
}

}  // namespace akepler
