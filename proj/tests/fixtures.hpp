#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "glacier/equilibria.hpp"
#include "glacier/model.hpp"
#include "glacier/params.hpp"
#include "glacier/roots.hpp"
#include "glacier/stability.hpp"

namespace fixtures {

using namespace glacier;

inline ModelParams table1() {
  ModelParams m = nondimensionalize(PhysicalParams{}).first;
  m.epsilon = 0.0;
  return m;
}

/// Table values with the accumulation centre moved onto the rising branch of f.
inline ModelParams hopf_demo() {
  ModelParams m = table1();
  m.accum.center = 1.416;
  return m;
}

inline ModelParams wide_curves() {
  ModelParams m = table1();
  m.alpha1 = 0.23;
  m.albedo.center = 1.27;
  m.albedo.steepness = 0.12;
  m.accum.center = 1.29;
  m.accum.steepness = 0.05;
  return m;
}

inline std::optional<CriticalPoint> hopf_point(const ModelParams& m) {
  for (const auto& cp : find_equilibria(m)) {
    if (is_hopf_candidate(cp)) return cp;
  }
  return std::nullopt;
}

/// Random parameter set near the table values.
inline ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams m = table1();
  m.beta = 0.75 + 0.07 * u(rng);
  m.gamma = 0.25 + 0.1 * u(rng);
  m.alpha1 = 0.2 + 0.1 * u(rng);
  m.alpha2 = 3.5 + u(rng);
  m.albedo.center = 1.35 + 0.1 * u(rng);
  m.albedo.steepness = 0.01 + 0.02 * u(rng);
  m.accum.limit_minus = 0.05 + 0.1 * u(rng);
  m.accum.limit_plus = 0.4 + 0.2 * u(rng);
  m.accum.center = m.albedo.center + 0.04 * (u(rng) - 0.3);
  m.accum.steepness = 0.002 + 0.008 * u(rng);
  return m;
}

struct HopfDraw {
  ModelParams params;
  CriticalPoint cp;
};

/// Draws with an equilibrium satisfying g' > f' > 0, kept min_ratio away
/// from the edge g' = f' and off f' = 0.
inline std::vector<HopfDraw> hopf_draws(std::size_t count, std::uint64_t seed, double min_ratio = 1.05) {
  std::mt19937_64 rng(seed);
  std::vector<HopfDraw> out;
  while (out.size() < count) {
    const ModelParams m = random_params(rng);
    for (const auto& cp : find_equilibria(m)) {
      if (is_hopf_candidate(cp) && cp.g1 / cp.f1 > min_ratio && cp.f1 > 1e-3) {
        out.push_back({m, cp});
        break;
      }
    }
  }
  return out;
}

struct EquilibriumDraw {
  ModelParams params;
  CriticalPoint cp;
};

inline std::vector<EquilibriumDraw> equilibrium_draws(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<EquilibriumDraw> out;
  while (out.size() < count) {
    const ModelParams m = random_params(rng);
    for (const auto& cp : find_equilibria(m)) {
      if (out.size() < count && cp.lambda_c > 1e-3) out.push_back({m, cp});
    }
  }
  return out;
}

/// Shift alpha1 so that f touches g at a point where f' = g' > 0.
/// Returns the adjusted parameters and the tangency abscissa.
inline std::pair<ModelParams, double> construct_tangency(ModelParams m, double lo, double hi) {
  auto slope_gap = [&](double t) { return nullcline_f(m, t, 1) - nullcline_g(m, t, 1); };
  const double t = bisect(slope_gap, lo, hi);
  const double gap = nullcline_f(m, t) - nullcline_g(m, t);
  m.alpha1 += m.alpha2 * gap;
  return {m, t};
}

}  // namespace fixtures
