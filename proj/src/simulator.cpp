#include "glacier/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "glacier/errors.hpp"

namespace glacier {

namespace {

template <class Pred>
double locate(const DenseStep& st, double a, double b, Pred crossed) {
  while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (crossed(st(m))) {
      b = m;
    } else {
      a = m;
    }
  }
  return b;
}

Dopri5::Rhs make_rhs(const ModelParams& p, double mu, ModelKind model) {
  if (model == ModelKind::Simplified) {
    return [&p, mu](double, const Vec2& y) -> Vec2 {
      if (!(y[1] > 0.0)) return {temperature_rate(p, mu, y[0], y[1]), 0.0};
      const Derivative d = vector_field(p, mu, {y[0], y[1]});
      return {d.dtheta, d.dlambda};
    };
  }
  return [&p, mu](double, const Vec2& y) -> Vec2 {
    if (!(y[1] > 0.0)) return {temperature_rate(p, mu, y[0], y[1]), 0.0};
    const FullDerivative d = vector_field_full(p, mu, {y[0], y[1]});
    return {d.dtheta, d.dlambda};
  };
}

void check_tolerance(double tol, const char* name) {
  if (!(tol >= 1e-14 && tol <= 1e-3)) {
    throw DomainError(std::string(name) + " must lie in [1e-14, 1e-3]");
  }
}

}  // namespace

std::string_view to_string(ModelKind m) {
  return m == ModelKind::Simplified ? "simplified" : "full";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "time_limit";
    case Termination::LambdaFloor: return "lambda_floor";
    case Termination::ComplexSnowline: return "complex_snowline";
  }
  return "unknown";
}

ModelKind model_kind_from_string(std::string_view s) {
  if (s == "simplified") return ModelKind::Simplified;
  if (s == "full") return ModelKind::Full;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected simplified or full)");
}

Trajectory integrate(const ModelParams& p, double mu, const State& initial, double t_end,
                     const IntegrateOptions& opt) {
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  if (opt.fixed_step <= 0.0) {
    check_tolerance(opt.rel_tol, "rel_tol");
    check_tolerance(opt.abs_tol, "abs_tol");
  }
  if (!(initial.theta > 0.0) || !(initial.lambda > opt.lambda_floor)) {
    throw DomainError("initial state must have theta > 0 and lambda above the floor");
  }
  if (opt.model == ModelKind::Simplified && initial.lambda > 0.25) {
    throw DomainError("simplified model requires lambda <= 1/4");
  }
  const bool full = opt.model == ModelKind::Full;

  Trajectory tr;
  tr.model = opt.model;
  Regime current = Regime::Accumulating;
  auto regime_of = [&](const Vec2& y) { return full_regime(y[1], p.epsilon); };
  auto record = [&](double t, const Vec2& y) {
    tr.times.push_back(t);
    tr.states.push_back({y[0], y[1]});
    if (full) tr.regimes.push_back(regime_of(y));
  };

  try {
    if (full) current = full_regime(initial.lambda, p.epsilon);
    OdeOptions oo;
    oo.rel_tol = opt.rel_tol;
    oo.abs_tol = opt.abs_tol;
    oo.fixed_step = opt.fixed_step;
    oo.max_step = opt.max_step;
    Dopri5 ode(make_rhs(p, mu, opt.model), oo);
    ode.reset(0.0, {initial.theta, initial.lambda});
    record(0.0, {initial.theta, initial.lambda});
    long sample_index = 1;

    while (ode.t() < t_end) {
      const DenseStep& st = ode.advance(t_end);
      double t_stop = st.t1();
      bool floor_hit = false;
      bool switched = false;
      if (st.y1[1] <= opt.lambda_floor) {
        t_stop = locate(st, st.t0, st.t1(), [&](const Vec2& y) { return y[1] <= opt.lambda_floor; });
        floor_hit = true;
      }
      if (full && regime_of(st(t_stop)) != current) {
        t_stop = locate(st, st.t0, t_stop, [&](const Vec2& y) {
          return y[1] > opt.lambda_floor && regime_of(y) != current;
        });
        switched = true;
        floor_hit = false;
      }
      const Vec2 y_stop = (t_stop == st.t1()) ? st.y1 : st(t_stop);

      if (opt.sample_dt > 0.0) {
        for (double ts = sample_index * opt.sample_dt; ts <= t_stop; ts = ++sample_index * opt.sample_dt) {
          if (ts > tr.times.back()) record(ts, st(ts));
        }
        if ((switched || floor_hit || t_stop >= t_end) && t_stop > tr.times.back()) record(t_stop, y_stop);
      } else if (t_stop > tr.times.back()) {
        record(t_stop, y_stop);
      }

      if (floor_hit) {
        tr.terminated = Termination::LambdaFloor;
        return tr;
      }
      if (switched) {
        tr.switches.push_back(tr.times.size() - 1);
        current = regime_of(y_stop);
        ode.reset(t_stop, y_stop);
      }
    }
  } catch (const ComplexSnowline&) {
    tr.terminated = Termination::ComplexSnowline;
    return tr;
  }
  tr.terminated = Termination::TimeLimit;
  return tr;
}

Trajectory integrate(const ModelParams& p, double mu, const State& initial, double t_end,
                     double rel_tol, double abs_tol, ModelKind model) {
  IntegrateOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_tol;
  opt.model = model;
  return integrate(p, mu, initial, t_end, opt);
}

namespace {

struct ReturnResult {
  enum class Status { Returned, Escaped, TimedOut } status = Status::TimedOut;
  double rho = 0.0;
  double time = 0.0;
  State crossing;
  double theta_min = 0.0, theta_max = 0.0, lambda_min = 0.0, lambda_max = 0.0;
};

class ReturnMap {
 public:
  ReturnMap(const ModelParams& p, double mu, const CriticalPoint& cp, const CycleOptions& opt)
      : p_(p), mu_(mu), cp_(cp), opt_(opt) {
    const EigenPair ev = eigenvalues(cp, mu, p.alpha2, p.gamma);
    const double w = std::abs(ev.first.imag());
    const double rate = std::max({w, std::abs(ev.first.real()), std::abs(ev.second.real()), 1e-3});
    per_return_limit_ = std::max(200.0, 200.0 * 2.0 * std::numbers::pi / rate);
  }

  double remaining() const { return opt_.max_time - used_; }

  /// One return from (theta_c, lambda_c - rho) to the next upward crossing.
  ReturnResult operator()(double rho) {
    ReturnResult r;
    OdeOptions oo;
    oo.rel_tol = opt_.rel_tol;
    oo.abs_tol = opt_.abs_tol;
    Dopri5 ode(make_rhs(p_, mu_, ModelKind::Simplified), oo);
    const Vec2 y0{cp_.theta_c, cp_.lambda_c - rho};
    if (!(y0[1] > kLambdaFloor)) {
      r.status = ReturnResult::Status::Escaped;
      return r;
    }
    ode.reset(0.0, y0);
    r.theta_min = r.theta_max = y0[0];
    r.lambda_min = r.lambda_max = y0[1];
    const double limit = std::min(per_return_limit_, remaining());
    if (!(limit > 0.0)) return r;
    while (ode.t() < limit) {
      const DenseStep& st = ode.advance(limit);
      if (st.y1[1] <= kLambdaFloor) {
        used_ += st.t1();
        r.status = ReturnResult::Status::Escaped;
        return r;
      }
      const double before = st.y0[0] - cp_.theta_c;
      const double after = st.y1[0] - cp_.theta_c;
      double t_end = st.t1();
      const bool crossed = before < 0.0 && after >= 0.0;
      if (crossed) {
        t_end = locate(st, st.t0, st.t1(), [&](const Vec2& y) { return y[0] >= cp_.theta_c; });
      }
      for (int i = 1; i <= 8; ++i) {
        const Vec2 y = st(st.t0 + (t_end - st.t0) * i / 8.0);
        r.theta_min = std::min(r.theta_min, y[0]);
        r.theta_max = std::max(r.theta_max, y[0]);
        r.lambda_min = std::min(r.lambda_min, y[1]);
        r.lambda_max = std::max(r.lambda_max, y[1]);
      }
      if (crossed) {
        const Vec2 y = st(t_end);
        used_ += t_end;
        r.status = ReturnResult::Status::Returned;
        r.time = t_end;
        r.crossing = {y[0], y[1]};
        r.rho = cp_.lambda_c - y[1];
        return r;
      }
    }
    used_ += ode.t();
    return r;
  }

 private:
  const ModelParams& p_;
  double mu_;
  CriticalPoint cp_;
  CycleOptions opt_;
  double per_return_limit_ = 0.0;
  double used_ = 0.0;
};

}  // namespace

std::optional<LimitCycle> poincare_cycle(const ModelParams& p, double mu, const CriticalPoint& cp,
                                         const CycleOptions& opt) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  if (!(cp.lambda_c > 0.0 && cp.lambda_c < 0.25)) throw DomainError("critical point outside the domain");
  ReturnMap map(p, mu, cp, opt);

  double rho0 = opt.perturbation;
  if (opt.transient > 0.0) {
    State start{cp.theta_c + opt.perturbation, cp.lambda_c};
    const Trajectory tr = integrate(p, mu, start, opt.transient, opt.rel_tol, opt.abs_tol);
    if (tr.terminated != Termination::TimeLimit) return std::nullopt;
    for (std::size_t i = tr.states.size(); i-- > 1;) {
      const State& a = tr.states[i - 1];
      const State& b = tr.states[i];
      if (a.theta < cp.theta_c && b.theta >= cp.theta_c) {
        const double w = (cp.theta_c - a.theta) / (b.theta - a.theta);
        const double lam = a.lambda + w * (b.lambda - a.lambda);
        if (cp.lambda_c - lam > 0.0) rho0 = cp.lambda_c - lam;
        break;
      }
    }
  }
  rho0 = std::min(rho0, 0.5 * cp.lambda_c);

  auto D = [&](double rho) -> double {
    const ReturnResult r = map(rho);
    switch (r.status) {
      case ReturnResult::Status::Returned: return r.rho - rho;
      case ReturnResult::Status::Escaped: return cp.lambda_c;
      case ReturnResult::Status::TimedOut: return -rho;
    }
    return -rho;
  };

  const double noise = 100.0 * (opt.abs_tol + opt.rel_tol * cp.lambda_c);
  double lo = rho0, hi = rho0;
  double d0 = D(rho0);
  if (d0 <= noise) d0 = -std::max(std::abs(d0), noise);
  double d_lo = d0, d_hi = d0;
  if (d_lo > 0.0) {
    for (;;) {
      if (map.remaining() <= 0.0) return std::nullopt;
      const double next = 2.0 * lo;
      if (next >= cp.lambda_c) return std::nullopt;
      const double d = D(next);
      if (d < 0.0) {
        hi = next;
        d_hi = d;
        break;
      }
      lo = next;
      d_lo = d;
    }
  } else {
    for (;;) {
      if (map.remaining() <= 0.0) return std::nullopt;
      const double next = 0.5 * hi;
      if (next < opt.min_radius) return std::nullopt;
      const double d = D(next);
      if (d > noise) {
        lo = next;
        d_lo = d;
        break;
      }
      hi = next;
      d_hi = -std::max(std::abs(d), noise);
    }
  }

  double rho_star = lo;
  if (hi != lo) {
    boost::uintmax_t iters = 80;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
    const auto bracket = boost::math::tools::toms748_solve(D, lo, hi, d_lo, d_hi, tol, iters);
    rho_star = 0.5 * (bracket.first + bracket.second);
  }
  if (map.remaining() <= 0.0) return std::nullopt;

  LimitCycle cycle;
  double rho = rho_star;
  std::vector<double> periods;
  std::vector<double> lambdas;
  int small_steps = 0;
  for (int i = 0; i < 8; ++i) {
    const ReturnResult r = map(rho);
    if (r.status != ReturnResult::Status::Returned) {
      return std::nullopt;
    }
    periods.push_back(r.time);
    cycle.section_points.push_back(r.crossing);
    if (!lambdas.empty()) {
      small_steps = std::abs(r.crossing.lambda - lambdas.back()) < opt.tol ? small_steps + 1 : 0;
    }
    lambdas.push_back(r.crossing.lambda);
    cycle.theta_min = r.theta_min;
    cycle.theta_max = r.theta_max;
    cycle.lambda_min = r.lambda_min;
    cycle.lambda_max = r.lambda_max;
    rho = r.rho;
    if (small_steps >= 3 && periods.size() >= 5) break;
  }
  if (!(rho > opt.min_radius)) return std::nullopt;
  cycle.converged = small_steps >= 3;
  const std::size_t n = std::min<std::size_t>(5, periods.size());
  double sum = 0.0;
  for (std::size_t i = periods.size() - n; i < periods.size(); ++i) sum += periods[i];
  cycle.period = sum / static_cast<double>(n);
  cycle.amplitude_theta = 0.5 * (cycle.theta_max - cycle.theta_min);
  cycle.amplitude_lambda = 0.5 * (cycle.lambda_max - cycle.lambda_min);
  return cycle;
}

std::optional<LimitCycle> poincare_cycle(const ModelParams& p, double mu, const CriticalPoint& cp,
                                         double transient, double max_time, double tol) {
  CycleOptions opt;
  opt.transient = transient;
  opt.max_time = max_time;
  opt.tol = tol;
  return poincare_cycle(p, mu, cp, opt);
}

std::vector<std::pair<double, std::optional<double>>> amplitude_curve(
    const ModelParams& p, const CriticalPoint& cp, const std::vector<double>& mus,
    const CycleOptions& opt) {
  std::vector<std::pair<double, std::optional<double>>> out;
  out.reserve(mus.size());
  for (double mu : mus) {
    const auto cycle = poincare_cycle(p, mu, cp, opt);
    if (cycle && cycle->converged) {
      out.emplace_back(mu, cycle->amplitude_theta);
    } else {
      out.emplace_back(mu, std::nullopt);
    }
  }
  return out;
}

BifurcationDiagram sweep_mu(const ModelParams& p, std::vector<double> mu_grid,
                            std::optional<double> theta_hint, const CycleOptions& opt) {
  if (mu_grid.empty()) throw DomainError("mu grid must not be empty");
  for (double mu : mu_grid) {
    if (!(mu > 0.0)) throw DomainError("mu grid values must be positive");
  }
  std::sort(mu_grid.begin(), mu_grid.end());

  BifurcationDiagram diagram;
  const auto eq = find_equilibria(p);
  std::optional<CriticalPoint> tracked;
  if (!eq.empty()) {
    if (theta_hint) {
      tracked = *std::min_element(eq.begin(), eq.end(), [&](const auto& a, const auto& b) {
        return std::abs(a.theta_c - *theta_hint) < std::abs(b.theta_c - *theta_hint);
      });
    } else {
      const auto it = std::find_if(eq.begin(), eq.end(), is_hopf_candidate);
      tracked = it != eq.end() ? *it : eq.front();
    }
    diagram.theta_c = tracked->theta_c;
    diagram.lambda_c = tracked->lambda_c;
  }

  for (double mu : mu_grid) {
    DiagramRow row;
    row.mu = mu;
    const bool residual_ok =
        tracked && std::abs(nullcline_f(p, tracked->theta_c) - nullcline_g(p, tracked->theta_c)) <= 1e-10;
    if (residual_ok) {
      row.kind = classify(*tracked, mu, p.alpha2, p.gamma);
      if (*row.kind != Classification::Saddle && *row.kind != Classification::NonHyperbolicTangency) {
        const auto cycle = poincare_cycle(p, mu, *tracked, opt);
        if (cycle && cycle->converged) {
          row.period = cycle->period;
          row.amplitude_theta = cycle->amplitude_theta;
          row.amplitude_lambda = cycle->amplitude_lambda;
        }
      }
    }
    diagram.rows.push_back(row);
  }
  return diagram;
}

}  // namespace glacier
