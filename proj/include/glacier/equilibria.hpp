#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "glacier/params.hpp"

namespace glacier {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

/// Equilibrium of the simplified system together with the nullcline and
/// accumulation-ratio derivatives evaluated there.
struct CriticalPoint {
  double theta_c = 0.0;
  double lambda_c = 0.0;
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
  double g1 = 0.0, g2 = 0.0;
  double xi_c = 0.0, xi1 = 0.0, xi2 = 0.0, xi3 = 0.0;
  bool smooth = true;
  bool tangency_warning = false;
};

/// Evaluate the derivative cache at theta (lambda_c = g(theta)); does not
/// check that theta is an equilibrium.
CriticalPoint critical_point_at(const ModelParams& p, double theta);

/// Zeros theta_m < theta_M of f'; empty when f' < 0 everywhere.
std::optional<std::pair<double, double>> theta_extrema(const ModelParams& p);

inline constexpr Interval kDefaultThetaRange{0.5, 2.5};
inline constexpr int kDefaultGridN = 2000;

std::vector<CriticalPoint> find_equilibria(const ModelParams& p,
                                           Interval theta_range = kDefaultThetaRange,
                                           int grid_n = kDefaultGridN);

enum class EquilibriumCount { One, AtLeastThree, Five, Degenerate };
const char* to_string(EquilibriumCount c);

EquilibriumCount count_classification(const ModelParams& p);

struct BranchPair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double zeta = 0.0;
  Interval bounds1;
  Interval bounds2;
};

/// Lowest epsilon for which lambda0(lambda) = zeta has two genuine roots.
double branch_epsilon_floor(double xi);
/// Largest admissible epsilon (exclusive).
double branch_epsilon_ceiling(double xi);

/// Both roots of lambda0(lambda, epsilon) = 1/(1+xi).
BranchPair lambda_branches(double xi, double epsilon);
std::pair<Interval, Interval> branch_bounds(double xi, double epsilon);

/// Location and value of the maximum of lambda0(., epsilon) over lambda > 0.
std::pair<double, double> lambda0_max(double epsilon);

}  // namespace glacier
