#pragma once

#include <utility>

#include "glacier/equilibria.hpp"
#include "glacier/stability.hpp"

namespace glacier {

struct FdConfig {
  double base_step = 1e-4;
  int richardson_levels = 2;

  void validate() const;
};

/// Central differences of vector_field with Richardson extrapolation.
Jacobian2 fd_jacobian(const ModelParams& p, double mu, const State& s, const FdConfig& cfg = {});

/// First Lyapunov coefficient at mu0 from the rotated (psi, kappa)
/// coordinates, with the higher partials of the transformed field taken by
/// finite differences of its analytic first partials.
double numeric_l1(const ModelParams& p, const CriticalPoint& cp, const FdConfig& cfg = {});

struct OracleBranches {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// lambda1 could not be resolved above the scan floor and is reported as
  /// the lower end of the admissible range.
  bool lambda1_on_boundary = false;
};

/// Scan of lambda0(lambda, epsilon) - 1/(1+xi) on a log-spaced grid with
/// bisection refinement. Throws OracleMismatch when two roots are not found.
OracleBranches bisect_lambda_branches(double xi, double epsilon);

/// Grid plus golden-section maximum of lambda0(., epsilon) on (0, 1].
std::pair<double, double> grid_max_lambda0(double epsilon);

}  // namespace glacier
