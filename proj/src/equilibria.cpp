#include "glacier/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glacier/errors.hpp"
#include "glacier/model.hpp"
#include "glacier/roots.hpp"

namespace glacier {

namespace {

constexpr double kTangencyLevel = 1e-9;

double h_value(const ModelParams& p, double theta) {
  return nullcline_f(p, theta) - nullcline_g(p, theta);
}

double h_slope(const ModelParams& p, double theta) {
  return nullcline_f(p, theta, 1) - nullcline_g(p, theta, 1);
}

bool nearly_tangent(const CriticalPoint& cp) {
  return std::abs(cp.f1 - cp.g1) <= kTangencyLevel * std::max(std::abs(cp.f1), std::abs(cp.g1));
}

}  // namespace

CriticalPoint critical_point_at(const ModelParams& p, double theta) {
  CriticalPoint cp;
  cp.theta_c = theta;
  cp.lambda_c = nullcline_g(p, theta);
  cp.xi_c = p.accum(theta);
  cp.smooth = p.smooth();
  try {
    cp.f1 = nullcline_f(p, theta, 1);
    cp.f2 = nullcline_f(p, theta, 2);
    cp.f3 = nullcline_f(p, theta, 3);
    cp.g1 = nullcline_g(p, theta, 1);
    cp.g2 = nullcline_g(p, theta, 2);
    cp.xi1 = p.accum(theta, 1);
    cp.xi2 = p.accum(theta, 2);
    cp.xi3 = p.accum(theta, 3);
  } catch (const NonDifferentiablePoint&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cp.f1 = cp.f2 = cp.f3 = cp.g1 = cp.g2 = cp.xi1 = cp.xi2 = cp.xi3 = nan;
    cp.smooth = false;
  }
  return cp;
}

std::optional<std::pair<double, double>> theta_extrema(const ModelParams& p) {
  const SigmoidResponse& a = p.albedo;
  if (a.family == SigmoidFamily::PiecewiseLinear) {
    const double inner = -((1.0 - p.gamma) * (a.limit_plus - a.limit_minus) / (2.0 * a.steepness) + 1.0) /
                         (p.gamma * p.alpha2);
    if (!(inner > 0.0)) return std::nullopt;
    return std::make_pair(a.center - a.steepness, a.center + a.steepness);
  }
  auto fp = [&](double t) { return nullcline_f(p, t, 1); };
  if (!(fp(a.center) > 0.0)) return std::nullopt;
  auto outward = [&](double dir) {
    double w = a.steepness;
    for (int i = 0; i < 80 && fp(a.center + dir * w) > 0.0; ++i) w *= 2.0;
    return a.center + dir * w;
  };
  const double left = bisect(fp, outward(-1.0), a.center);
  const double right = bisect(fp, a.center, outward(1.0));
  return std::make_pair(left, right);
}

std::vector<CriticalPoint> find_equilibria(const ModelParams& p, Interval theta_range, int grid_n) {
  if (!(theta_range.lo > 0.0) || !(theta_range.hi > theta_range.lo)) {
    throw DomainError("theta range must be an increasing interval inside (0, inf)");
  }
  if (grid_n < 100) throw DomainError("grid_n must be at least 100");

  const int n = grid_n;
  std::vector<double> th(n + 1), h(n + 1);
  for (int i = 0; i <= n; ++i) {
    th[i] = theta_range.lo + (theta_range.hi - theta_range.lo) * i / n;
    h[i] = h_value(p, th[i]);
  }
  auto hf = [&](double t) { return h_value(p, t); };

  std::vector<double> roots;
  std::vector<bool> flagged;
  for (int i = 0; i < n; ++i) {
    if (h[i] == 0.0) {
      roots.push_back(th[i]);
      flagged.push_back(false);
    } else if (h[i + 1] != 0.0 && (h[i] < 0.0) != (h[i + 1] < 0.0)) {
      roots.push_back(bisect(hf, th[i], th[i + 1]));
      flagged.push_back(false);
    }
  }
  if (h[n] == 0.0) {
    roots.push_back(th[n]);
    flagged.push_back(false);
  }

  for (int i = 1; i < n; ++i) {
    const bool same_sign = (h[i - 1] < 0.0) == (h[i] < 0.0) && (h[i + 1] < 0.0) == (h[i] < 0.0) &&
                           h[i - 1] != 0.0 && h[i] != 0.0 && h[i + 1] != 0.0;
    if (!same_sign) continue;
    if (std::abs(h[i]) > std::abs(h[i - 1]) || std::abs(h[i]) > std::abs(h[i + 1])) continue;
    auto [t, neg_abs] = golden_max([&](double x) { return -std::abs(hf(x)); }, th[i - 1], th[i + 1]);
    if (!(-neg_abs < kTangencyLevel)) continue;
    const double slope_scale =
        std::max(std::abs(nullcline_f(p, t, 1)), std::abs(nullcline_g(p, t, 1))) + 1.0;
    if (std::abs(h_slope(p, t)) > 1e-6 * slope_scale) continue;
    if (std::any_of(roots.begin(), roots.end(), [&](double r) { return std::abs(r - t) < 1e-9; })) continue;
    roots.push_back(t);
    flagged.push_back(true);
  }

  std::vector<CriticalPoint> out;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    CriticalPoint cp = critical_point_at(p, roots[k]);
    if (!(cp.lambda_c > 0.0 && cp.lambda_c < 0.25)) continue;
    cp.tangency_warning = flagged[k] || (cp.smooth && nearly_tangent(cp));
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.theta_c < b.theta_c; });
  return out;
}

const char* to_string(EquilibriumCount c) {
  switch (c) {
    case EquilibriumCount::One: return "one";
    case EquilibriumCount::AtLeastThree: return "at_least_three";
    case EquilibriumCount::Five: return "five";
    case EquilibriumCount::Degenerate: return "degenerate";
  }
  return "unknown";
}

EquilibriumCount count_classification(const ModelParams& p) {
  const auto ext = theta_extrema(p);
  if (!ext) return EquilibriumCount::Degenerate;
  const auto [tm, tM] = *ext;
  const double fm = nullcline_f(p, tm);
  const double fM = nullcline_f(p, tM);
  const double xm = p.accum.limit_minus;
  const double xp = p.accum.limit_plus;
  const double g_minus = 0.25 * xm / (1.0 + xm);
  const double g_plus = 0.25 * xp / (1.0 + xp);

  if (g_plus <= fm || g_minus >= fM ||
      (nullcline_g(p, tm) < fm && nullcline_g(p, tM) > fM)) {
    return EquilibriumCount::One;
  }
  const auto eq = find_equilibria(p);
  for (const auto& cp : eq) {
    if (cp.tangency_warning) return EquilibriumCount::Degenerate;
  }
  if (fm < g_minus && g_plus < fM) {
    for (const auto& cp : eq) {
      if (cp.theta_c > tm && cp.theta_c < tM && cp.f1 < cp.g1) return EquilibriumCount::Five;
    }
    return EquilibriumCount::AtLeastThree;
  }
  return EquilibriumCount::Degenerate;
}

double branch_epsilon_floor(double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  const double stated = -(2.0 + xi) / (2.0 * xi);
  const double genuine = -(2.0 + 3.0 * xi) / (4.0 * xi);
  return std::max(stated, genuine);
}

double branch_epsilon_ceiling(double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  return 0.25 * xi / (2.0 + xi);
}

std::pair<Interval, Interval> branch_bounds(double xi, double epsilon) {
  const double ceiling = branch_epsilon_ceiling(xi);
  if (epsilon >= ceiling) throw NoBranches(ceiling, "epsilon at or above the two-branch threshold");
  const double floor = branch_epsilon_floor(xi);
  if (epsilon < floor) throw NoBranches(floor, "epsilon below the two-branch threshold");

  const double big = xi * (1.0 + xi) / ((2.0 + xi) * (2.0 + xi));
  const double r = 1.0 - 1.0 / (2.0 + xi);
  const double c1 = 1.0 + 1.0 / xi;
  const double e2 = epsilon * epsilon;
  Interval b1, b2;
  if (epsilon > 0.0) {
    b1 = {c1 * e2, 4.0 * c1 * e2};
    b2 = {big - 3.0 * r * epsilon, big - 2.0 * r * epsilon};
  } else {
    b1 = {c1 * e2 + 2.0 * c1 * (1.0 + 2.0 / xi) * e2 * epsilon, c1 * e2};
    b2 = {big - r * epsilon, big - 2.0 * r * epsilon};
  }
  return {b1, b2};
}

BranchPair lambda_branches(double xi, double epsilon) {
  auto [b1, b2] = branch_bounds(xi, epsilon);
  const double zeta = 1.0 / (1.0 + xi);
  const double k = (2.0 + xi) / xi;
  const double c = (1.0 - zeta) / (2.0 * (1.0 + zeta) * (1.0 + zeta));
  const double a = 1.0 - 2.0 * k * epsilon;
  const double b = 1.0 - 4.0 * k * epsilon;
  const double s = a + std::sqrt(b);
  BranchPair out;
  out.zeta = zeta;
  out.lambda2 = c * s;
  out.lambda1 = c * 4.0 * k * k * epsilon * epsilon / s;
  out.bounds1 = b1;
  out.bounds2 = b2;
  return out;
}

std::pair<double, double> lambda0_max(double epsilon) {
  if (epsilon > 0.0) {
    return {0.5 * epsilon * (1.0 + 4.0 * epsilon), (1.0 - 4.0 * epsilon) / (1.0 + 4.0 * epsilon)};
  }
  return {-0.5 * epsilon, 1.0};
}

}  // namespace glacier
