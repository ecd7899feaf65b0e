#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pjac/cpoly.hpp"

namespace pjac {

struct Check {
  std::string name;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// The worked examples of the built-in families plus seeded random identity checks.
/// Output depends only on (seed, tol).
std::vector<Check> regression_suite(std::uint64_t seed, double tol = kDefaultRootTol);

}  // namespace pjac
