#include "glacier/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "glacier/equilibria.hpp"
#include "glacier/errors.hpp"
#include "glacier/model.hpp"
#include "glacier/oracle.hpp"
#include "glacier/stability.hpp"

namespace glacier {

namespace {

double max_norm(const Jacobian2& j) {
  return std::max({std::abs(j.a11), std::abs(j.a12), std::abs(j.a21), std::abs(j.a22)});
}

double jacobian_gap(const Jacobian2& a, const Jacobian2& b) {
  const double d = std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a21 - b.a21),
                             std::abs(a.a22 - b.a22)});
  return d / std::max(max_norm(a), 1e-300);
}

double eigen_gap(const EigenPair& a, const EigenPair& b) {
  const double scale = std::max(std::abs(a.first), std::abs(a.second));
  const double d = std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
  return d / std::max(scale, 1e-300);
}

double fd_order(const ModelParams& p, double theta, int order, bool f_curve) {
  const double h = 1e-2 * std::min(p.albedo.steepness, p.accum.steepness);
  auto v = [&](double t) { return f_curve ? nullcline_f(p, t, order - 1) : nullcline_g(p, t, order - 1); };
  const double d1 = (v(theta + h) - v(theta - h)) / (2.0 * h);
  const double d2 = (v(theta + h / 2) - v(theta - h / 2)) / h;
  return d2 + (d2 - d1) / 3.0;
}

void add(std::vector<CheckResult>& out, std::string name, double err, double tol, std::string note = {}) {
  out.push_back({std::move(name), err, tol, err <= tol, std::move(note)});
}

}  // namespace

std::vector<CheckResult> run_verification(const ModelParams& p, double mu, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto eq = find_equilibria(p);
  int idx = 0;
  for (const auto& cp : eq) {
    const std::string tag = "eq" + std::to_string(idx++);
    add(out, tag + ".residual", std::abs(nullcline_f(p, cp.theta_c) - nullcline_g(p, cp.theta_c)), 1e-12);
    if (!cp.smooth) continue;
    const Jacobian2 jc = jacobian(cp, mu, p.alpha2, p.gamma);
    const Jacobian2 jf = fd_jacobian(p, mu, {cp.theta_c, cp.lambda_c});
    add(out, tag + ".jacobian_fd", jacobian_gap(jc, jf), 1e-7);
    add(out, tag + ".eigenvalues_fd", eigen_gap(eigenvalues(jc), eigenvalues(jf)), 1e-7);
    for (int k = 1; k <= 3; ++k) {
      for (bool fc : {true, false}) {
        const double exact = fc ? nullcline_f(p, cp.theta_c, k) : nullcline_g(p, cp.theta_c, k);
        const double approx = fd_order(p, cp.theta_c, k, fc);
        const double scale = std::max(std::abs(exact), 1e-8);
        add(out, tag + (fc ? ".f" : ".g") + std::to_string(k) + "_fd", std::abs(exact - approx) / scale, 1e-5);
      }
    }
    if (is_hopf_candidate(cp)) {
      const double closed = lyapunov_closed_form(cp);
      try {
        const double numeric = numeric_l1(p, cp);
        add(out, tag + ".l1_oracle", std::abs(closed - numeric) / std::abs(closed), 1e-4);
      } catch (const ConditioningError& e) {
        add(out, tag + ".l1_oracle", INFINITY, 1e-4, e.what());
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uxi(0.05, 1.0), uu(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double xi = uxi(rng);
    const double lo = std::max(branch_epsilon_floor(xi), -1.0);
    const double eps = lo + (branch_epsilon_ceiling(xi) - lo) * (0.01 + 0.98 * uu(rng));
    const BranchPair bp = lambda_branches(xi, eps);
    const OracleBranches ob = bisect_lambda_branches(xi, eps);
    double e = std::abs(bp.lambda2 - ob.lambda2);
    if (!ob.lambda1_on_boundary) e = std::max(e, std::abs(bp.lambda1 - ob.lambda1));
    worst = std::max(worst, e);
  }
  add(out, "branches_oracle", worst, 1e-10);

  double worst_max = 0.0;
  for (double eps : {0.1, 0.01, 0.2, -0.05}) {
    const auto [lc, vc] = lambda0_max(eps);
    const auto [lg, vg] = grid_max_lambda0(eps);
    worst_max = std::max({worst_max, std::abs(lc - lg), std::abs(vc - vg)});
  }
  add(out, "lambda0_max_oracle", worst_max, 1e-8);
  return out;
}

}  // namespace glacier
