#include "glacier/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "glacier/errors.hpp"
#include "glacier/model.hpp"
#include "glacier/roots.hpp"

namespace glacier {

namespace {

/// Extrapolate estimates with an even-power error series, taken at h, h/2, ...
template <class Est>
double richardson(Est&& est, double h, int levels) {
  std::vector<double> prev, cur;
  for (int k = 0; k <= levels; ++k) {
    cur.assign(k + 1, 0.0);
    cur[0] = est(h / std::ldexp(1.0, k));
    for (int j = 1; j <= k; ++j) {
      const double f = std::ldexp(1.0, 2 * j);
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (f - 1.0);
    }
    prev = cur;
  }
  return prev.back();
}

template <class Fn>
double d1(Fn&& f, double h, int levels) {
  return richardson([&](double s) { return (f(s) - f(-s)) / (2.0 * s); }, h, levels);
}

template <class Fn>
double d2(Fn&& f, double h, int levels) {
  const double f0 = f(0.0);
  return richardson([&](double s) { return (f(s) - 2.0 * f0 + f(-s)) / (s * s); }, h, levels);
}

}  // namespace

void FdConfig::validate() const {
  if (!(base_step >= 1e-7 && base_step <= 1e-2)) throw DomainError("base_step must lie in [1e-7, 1e-2]");
  if (richardson_levels < 1 || richardson_levels > 4) throw DomainError("richardson_levels must lie in [1, 4]");
}

Jacobian2 fd_jacobian(const ModelParams& p, double mu, const State& s, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.base_step;
  if (!(s.lambda - h > 0.0)) throw DomainError("state too close to lambda = 0 for the difference stencil");
  const int lv = cfg.richardson_levels;
  auto F = [&](double th, double la) { return vector_field(p, mu, {th, la}).dtheta; };
  auto G = [&](double th, double la) { return vector_field(p, mu, {th, la}).dlambda; };
  Jacobian2 j;
  j.a11 = d1([&](double e) { return F(s.theta + e, s.lambda); }, h, lv);
  j.a12 = d1([&](double e) { return F(s.theta, s.lambda + e); }, h, lv);
  j.a21 = d1([&](double e) { return G(s.theta + e, s.lambda); }, h, lv);
  j.a22 = d1([&](double e) { return G(s.theta, s.lambda + e); }, h, lv);
  return j;
}

double numeric_l1(const ModelParams& p, const CriticalPoint& cp, const FdConfig& cfg) {
  cfg.validate();
  if (!is_hopf_candidate(cp)) throw NotHopfCandidate("numeric_l1 requires g' > f' > 0");
  if (!p.smooth()) throw NonDifferentiablePoint("numeric_l1 requires smooth response curves");
  const double ratio = cp.g1 / cp.f1 - 1.0;
  if (ratio < 1e-8) throw ConditioningError("g'/f' - 1 too close to zero for the rotated frame");
  const double s = std::sqrt(ratio);
  const double g1 = cp.g1;
  const double sl = std::sqrt(cp.lambda_c);
  const double k = cp.xi_c / sl;
  const double mu0 = k / (p.alpha2 * p.gamma * cp.f1);
  const double w0 = k * s;

  // (theta, lambda) = (theta_c + (psi - s kappa)/g', lambda_c + psi)
  const double a = 1.0 / g1;
  const double b = -s / g1;

  struct Partials {
    double Ft, Fl, Gt, Gl;
  };
  auto partials = [&](double psi, double kappa) {
    const double th = cp.theta_c + a * psi + b * kappa;
    const double la = cp.lambda_c + psi;
    if (!(la > 0.0)) throw DomainError("difference stencil left the domain");
    const double xi = p.accum(th);
    const double r = std::sqrt(la);
    Partials d;
    d.Ft = mu0 * (-(1.0 - p.gamma) * p.albedo(th, 1) - 1.0);
    d.Fl = -mu0 * p.alpha2 * p.gamma;
    d.Gt = r * (1.0 - 4.0 * la) * p.accum(th, 1);
    d.Gl = (xi - 12.0 * la * (1.0 + xi)) / (2.0 * r);
    return d;
  };
  auto P_psi = [&](double psi, double kappa) {
    const Partials d = partials(psi, kappa);
    return a * d.Gt + d.Gl;
  };
  auto P_kappa = [&](double psi, double kappa) { return b * partials(psi, kappa).Gt + w0; };
  auto Q_psi = [&](double psi, double kappa) {
    const Partials d = partials(psi, kappa);
    return (a * d.Gt + d.Gl - g1 * (a * d.Ft + d.Fl)) / s - w0;
  };
  auto Q_kappa = [&](double psi, double kappa) {
    const Partials d = partials(psi, kappa);
    return b * (d.Gt - g1 * d.Ft) / s;
  };

  const double h = cfg.base_step;
  const int lv = cfg.richardson_levels;
  auto along_psi = [](auto& fn) { return [&fn](double e) { return fn(e, 0.0); }; };
  auto along_kappa = [](auto& fn) { return [&fn](double e) { return fn(0.0, e); }; };

  const double Ppp = d1(along_psi(P_psi), h, lv);
  const double Ppk = d1(along_kappa(P_psi), h, lv);
  const double Pkk = d1(along_kappa(P_kappa), h, lv);
  const double Pppp = d2(along_psi(P_psi), h, lv);
  const double Ppkk = d2(along_kappa(P_psi), h, lv);
  const double Qpp = d1(along_psi(Q_psi), h, lv);
  const double Qpk = d1(along_kappa(Q_psi), h, lv);
  const double Qkk = d1(along_kappa(Q_kappa), h, lv);
  const double Qppk = d2(along_psi(Q_kappa), h, lv);
  const double Qkkk = d2(along_kappa(Q_kappa), h, lv);

  return (Pppp + Ppkk + Qppk + Qkkk) / (8.0 * w0) +
         (Ppk * (Ppp + Pkk) - Qpk * (Qpp + Qkk) - Ppp * Qpp + Pkk * Qkk) / (8.0 * w0 * w0);
}

OracleBranches bisect_lambda_branches(double xi, double epsilon) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  const double zeta = 1.0 / (1.0 + xi);
  const double lo = std::max(0.0, -(epsilon + 0.25) / 2.0);
  const double upper = std::max(1.0, 1.0 + 2.0 * std::abs(epsilon));
  auto h = [&](double lam) { return lambda0(lam, epsilon) - zeta; };

  constexpr int n = 10000;
  const double off_min = 1e-14;
  const double off_max = upper - lo;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo + off_min * std::pow(off_max / off_min, static_cast<double>(i) / (n - 1));
  }

  std::vector<double> roots;
  double prev = h(grid[0]);
  for (int i = 1; i < n; ++i) {
    const double cur = h(grid[i]);
    if (cur == 0.0) {
      roots.push_back(grid[i]);
    } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      roots.push_back(bisect(h, grid[i - 1], grid[i]));
    }
    prev = cur;
  }

  OracleBranches out;
  if (roots.size() == 2) {
    out.lambda1 = roots[0];
    out.lambda2 = roots[1];
    return out;
  }
  if (roots.size() == 1 && lo == 0.0 && h(grid[0]) > 0.0) {
    double right = grid[0];
    double off = off_min;
    while (off > 1e-300) {
      off *= 1e-4;
      const double left = lo + off;
      if (left == lo) break;
      if (h(left) < 0.0) {
        out.lambda1 = bisect(h, left, right);
        out.lambda2 = roots[0];
        return out;
      }
      right = left;
    }
    out.lambda1 = lo;
    out.lambda2 = roots[0];
    out.lambda1_on_boundary = true;
    return out;
  }
  throw OracleMismatch("branch scan found " + std::to_string(roots.size()) + " roots, expected two");
}

std::pair<double, double> grid_max_lambda0(double epsilon) {
  if (!(epsilon > -0.125)) throw DomainError("grid_max_lambda0 requires epsilon > -1/8");
  constexpr int n = 10000;
  const double first = 1e-12;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = first * std::pow(1.0 / first, static_cast<double>(i) / (n - 1));
  int best = 0;
  double best_val = lambda0(grid[0], epsilon);
  for (int i = 1; i < n; ++i) {
    const double v = lambda0(grid[i], epsilon);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == n - 1) return {grid[best], best_val};
  return golden_max([&](double lam) { return lambda0(lam, epsilon); }, grid[best - 1], grid[best + 1]);
}

}  // namespace glacier
