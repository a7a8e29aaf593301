#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glacier/params.hpp"

namespace glacier {

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Closed-form results against the numerical oracles for one parameter set.
std::vector<CheckResult> run_verification(const ModelParams& p, double mu, std::uint64_t seed);

}  // namespace glacier
