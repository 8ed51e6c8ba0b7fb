#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace akepler {

// One property check: passes when lo <= value <= hi.
struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  int coriolis_samples = 100;
};

// Pure Kepler at dt = T_orb / 1000 over 100 orbits (Yoshida): largest
// relative change of E, the vectors L and A, and |A|; L_z drift with the
// fixed anisotropy switched on.
std::vector<Check> verify_conservation(const VerifyOptions& options = {});

// Measured global order over one Kepler orbit for both schemes.
std::vector<Check> verify_order(const VerifyOptions& options = {});

// Matrix and component forms of the frame-rotation term on random inputs,
// plus the rotation-matrix identities.
std::vector<Check> verify_coriolis(const VerifyOptions& options = {});

// 10^4 steps forward, momentum flip, 10^4 steps back on static Hamiltonians.
std::vector<Check> verify_reversibility(const VerifyOptions& options = {});

inline constexpr std::string_view kVerifySuites[] = {
    "conservation", "order", "coriolis", "reversibility", "all"};

// Runs a suite by name; throws DomainError for unknown names.
std::vector<Check> run_verify_suite(std::string_view suite,
                                    const VerifyOptions& options = {});

}  // namespace akepler
