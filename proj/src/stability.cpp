#include "glacier/stability.hpp"

#include <algorithm>
#include <cmath>

#include "glacier/errors.hpp"

namespace glacier {

namespace {

double relax_rate(const CriticalPoint& cp) {
  if (!(cp.lambda_c > 0.0)) throw DomainError("critical point requires lambda_c > 0");
  return cp.xi_c / std::sqrt(cp.lambda_c);
}

}  // namespace

Jacobian2 jacobian(const CriticalPoint& cp, double mu, double alpha2, double gamma) {
  const double k = relax_rate(cp);
  const double m = mu * alpha2 * gamma;
  return {m * cp.f1, -m, k * cp.g1, -k};
}

EigenPair eigenvalues(const Jacobian2& j) {
  const double tr = j.trace();
  const double det = j.det();
  const double disc = j.discriminant();
  if (disc < 0.0) {
    const double im = 0.5 * std::sqrt(-disc);
    return {{0.5 * tr, im}, {0.5 * tr, -im}};
  }
  const double sq = std::sqrt(disc);
  if (tr == 0.0) return {{0.5 * sq, 0.0}, {-0.5 * sq, 0.0}};
  const double q = 0.5 * (tr + std::copysign(sq, tr));
  const double other = det / q;
  return {{std::max(q, other), 0.0}, {std::min(q, other), 0.0}};
}

EigenPair eigenvalues(const CriticalPoint& cp, double mu, double alpha2, double gamma) {
  return eigenvalues(jacobian(cp, mu, alpha2, gamma));
}

MuThresholds mu_thresholds(const CriticalPoint& cp, double alpha2, double gamma) {
  if (cp.f1 == 0.0) throw DegenerateSlope("f' vanishes at the critical point");
  const double k = relax_rate(cp);
  const double a = alpha2 * gamma;
  MuThresholds out;
  if (cp.g1 >= cp.f1) {
    const double K = k / a;
    const double s = 2.0 * cp.g1 - cp.f1 + 2.0 * std::sqrt(cp.g1 * (cp.g1 - cp.f1));
    out.mu2 = K * s / (cp.f1 * cp.f1);
    out.mu1 = K / s;
  }
  if (cp.g1 > cp.f1 && cp.f1 > 0.0) {
    out.mu0 = k / (a * cp.f1);
    out.omega0 = k * std::sqrt(cp.g1 / cp.f1 - 1.0);
  }
  return out;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::StableNode: return "stable_node";
    case Classification::StableFocus: return "stable_focus";
    case Classification::UnstableFocus: return "unstable_focus";
    case Classification::UnstableNode: return "unstable_node";
    case Classification::Saddle: return "saddle";
    case Classification::HopfCenter: return "hopf_center";
    case Classification::NonHyperbolicTangency: return "nonhyperbolic_tangency";
  }
  return "unknown";
}

bool is_tangent(const CriticalPoint& cp) {
  return std::abs(cp.f1 - cp.g1) <= 1e-9 * std::max(std::abs(cp.f1), std::abs(cp.g1));
}

Classification classify(const CriticalPoint& cp, double mu, double alpha2, double gamma) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  if (is_tangent(cp)) return Classification::NonHyperbolicTangency;
  if (cp.f1 == 0.0) {
    const Jacobian2 j = jacobian(cp, mu, alpha2, gamma);
    return j.discriminant() < 0.0 ? Classification::StableFocus : Classification::StableNode;
  }
  const MuThresholds t = mu_thresholds(cp, alpha2, gamma);
  if (cp.f1 < 0.0) {
    return (mu > *t.mu1 && mu < *t.mu2) ? Classification::StableFocus : Classification::StableNode;
  }
  if (cp.g1 < cp.f1) return Classification::Saddle;
  const double mu0 = *t.mu0;
  if (std::abs(mu - mu0) <= 1e-12 * mu0) return Classification::HopfCenter;
  if (mu <= *t.mu1) return Classification::StableNode;
  if (mu < mu0) return Classification::StableFocus;
  if (mu < *t.mu2) return Classification::UnstableFocus;
  return Classification::UnstableNode;
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::Supercritical: return "supercritical";
    case Criticality::Subcritical: return "subcritical";
    case Criticality::Degenerate: return "degenerate";
  }
  return "unknown";
}

bool is_hopf_candidate(const CriticalPoint& cp) { return cp.g1 > cp.f1 && cp.f1 > 0.0; }

double lyapunov_closed_form(const CriticalPoint& cp) {
  if (!is_hopf_candidate(cp)) throw NotHopfCandidate("Hopf analysis requires g' > f' > 0");
  if (!cp.smooth) throw NonDifferentiablePoint("Hopf analysis requires smooth response curves");
  const double L = cp.lambda_c;
  const double X = cp.xi_c;
  const double x1 = cp.xi1;
  const double x2 = cp.xi2;
  const double F1 = cp.f1, F2 = cp.f2, F3 = cp.f3, G1 = cp.g1;
  const double s = std::sqrt(G1 / F1 - 1.0);
  const double L2 = L * L, L3 = L2 * L;
  const double X2 = X * X, X4 = X2 * X2;
  const double F1s = F1 * F1;
  const double t1 = (4.0 * F3 * L2 * X2 + F1s * (3.0 * X2 * G1 - 8.0 * L2 * (4.0 * X + 1.0) * x1) +
                     8.0 * L3 * (1.0 - 2.0 * X) * F1 * x2) /
                    (32.0 * L2 * X2 * F1s * G1 * s);
  const double d23 = 8.0 * L2 * X4 * F1s * G1 * (F1 - G1) * s;
  const double t2 = (L2 * X2 * F2 * (4.0 * L2 * x2 - X2 * F2) +
                     X2 * F1s * F1 * (X2 * G1 + 4.0 * L2 * (2.0 * X - 1.0) * x1)) /
                    d23;
  const double t3 = (2.0 * L2 * F1s *
                         ((2.0 * X - 1.0) * x1 * (X2 * G1 + 4.0 * L2 * (2.0 * X - 1.0) * x1) -
                          2.0 * L * X2 * x2) -
                     2.0 * L3 * (2.0 * X - 1.0) * F1 * x1 * (X2 * F2 + 4.0 * L2 * x2)) /
                    d23;
  return t1 + t2 + t3;
}

HopfData hopf_analysis(const CriticalPoint& cp, double alpha2, double gamma) {
  if (!is_hopf_candidate(cp)) throw NotHopfCandidate("Hopf analysis requires g' > f' > 0");
  const MuThresholds t = mu_thresholds(cp, alpha2, gamma);
  HopfData h;
  h.mu0 = *t.mu0;
  h.omega0 = *t.omega0;
  h.l1 = lyapunov_closed_form(cp);
  h.transversality = 0.5 * alpha2 * gamma * cp.f1;
  if (std::abs(h.l1) <= 1e-8 * (1.0 + std::abs(h.l1))) {
    h.criticality = Criticality::Degenerate;
  } else {
    h.criticality = h.l1 < 0.0 ? Criticality::Supercritical : Criticality::Subcritical;
  }
  return h;
}

const char* to_string(CenterVerdict v) {
  switch (v) {
    case CenterVerdict::Unstable: return "unstable";
    case CenterVerdict::UnstableIfQuadNonzero: return "unstable_if_quad_nonzero";
    case CenterVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

CenterManifold center_manifold(const CriticalPoint& cp, double mu, double alpha1, double alpha2,
                               double gamma) {
  if (!is_tangent(cp) || !(cp.f1 > 0.0)) throw NotTangent("center manifold needs f' = g' > 0");
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  const double L = cp.lambda_c;
  const double sl = std::sqrt(L);
  const double X = cp.xi_c;
  const double X2 = X * X;
  const double a2g = alpha2 * gamma;
  const double mu0 = X / (a2g * cp.f1 * sl);

  CenterManifold out;
  const double inner = X - alpha1 * gamma * sl * mu * cp.f1;
  out.c2 = (a2g * sl * mu * cp.xi1 * (4.0 * L * L * cp.xi2 - X2 * cp.f2) + X2 * cp.xi2 * inner -
            8.0 * L * X2 * cp.xi1 * cp.xi1) /
           (2.0 * sl * cp.xi1 * inner * inner);
  const double den = a2g * sl * mu * cp.f1 - X;
  out.quad_coeff = 2.0 * a2g * mu * X2 * (cp.f2 - cp.g2) / (den * den * den);

  if (mu > mu0) {
    out.verdict = CenterVerdict::Unstable;
  } else if (mu == mu0) {
    out.verdict = CenterVerdict::UnstableIfQuadNonzero;
  } else {
    const double scale = std::max(std::abs(cp.f2), std::abs(cp.g2));
    out.verdict = std::abs(cp.f2 - cp.g2) <= 1e-9 * scale ? CenterVerdict::Inconclusive
                                                          : CenterVerdict::Unstable;
  }
  return out;
}

}  // namespace glacier
