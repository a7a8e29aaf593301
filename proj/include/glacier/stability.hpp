#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "glacier/equilibria.hpp"

namespace glacier {

/// 2x2 matrix in (theta, lambda) order.
struct Jacobian2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  /// trace^2 - 4 det, written without the cancellation.
  double discriminant() const { return (a11 - a22) * (a11 - a22) + 4.0 * a12 * a21; }
};

using EigenPair = std::pair<std::complex<double>, std::complex<double>>;

Jacobian2 jacobian(const CriticalPoint& cp, double mu, double alpha2, double gamma);

/// Roots of the characteristic polynomial; first has the larger real part
/// (or positive imaginary part for a complex pair).
EigenPair eigenvalues(const Jacobian2& j);
EigenPair eigenvalues(const CriticalPoint& cp, double mu, double alpha2, double gamma);

struct MuThresholds {
  std::optional<double> mu1;
  std::optional<double> mu2;
  std::optional<double> mu0;
  std::optional<double> omega0;
};

MuThresholds mu_thresholds(const CriticalPoint& cp, double alpha2, double gamma);

enum class Classification {
  StableNode,
  StableFocus,
  UnstableFocus,
  UnstableNode,
  Saddle,
  HopfCenter,
  NonHyperbolicTangency,
};

const char* to_string(Classification c);

bool is_tangent(const CriticalPoint& cp);

Classification classify(const CriticalPoint& cp, double mu, double alpha2, double gamma);

enum class Criticality { Supercritical, Subcritical, Degenerate };
const char* to_string(Criticality c);

struct HopfData {
  double mu0 = 0.0;
  double omega0 = 0.0;
  double l1 = 0.0;
  Criticality criticality = Criticality::Degenerate;
  double transversality = 0.0;
};

bool is_hopf_candidate(const CriticalPoint& cp);

/// First Lyapunov coefficient from the closed form in the nullcline derivatives.
double lyapunov_closed_form(const CriticalPoint& cp);

HopfData hopf_analysis(const CriticalPoint& cp, double alpha2, double gamma);

enum class CenterVerdict { Unstable, UnstableIfQuadNonzero, Inconclusive };
const char* to_string(CenterVerdict v);

struct CenterManifold {
  double c2 = 0.0;
  double quad_coeff = 0.0;
  CenterVerdict verdict = CenterVerdict::Inconclusive;
};

/// Reduced dynamics at an f' = g' > 0 tangency. quad_coeff multiplies psi^2,
/// where theta - theta_c ~ -(xi_c / sqrt(lambda_c)) psi on the slow manifold.
CenterManifold center_manifold(const CriticalPoint& cp, double mu, double alpha1, double alpha2,
                               double gamma);

}  // namespace glacier
