#include "glacier/ode.hpp"

#include <algorithm>
#include <cmath>

#include "glacier/errors.hpp"

namespace glacier {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafe = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr double kBeta = 0.04;

bool finite(const Vec2& v) { return std::isfinite(v[0]) && std::isfinite(v[1]); }

}  // namespace

Vec2 DenseStep::operator()(double t) const {
  const double s = (t - t0) / h;
  const double s1 = 1.0 - s;
  Vec2 out;
  for (int i = 0; i < 2; ++i) {
    out[i] = rcont[0][i] +
             s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
  }
  return out;
}

Dopri5::Dopri5(Rhs rhs, OdeOptions opt) : rhs_(std::move(rhs)), opt_(opt) {
  if (!(opt_.rel_tol > 0.0) || !(opt_.abs_tol > 0.0)) throw DomainError("tolerances must be positive");
}

void Dopri5::reset(double t, const Vec2& y) {
  t_ = t;
  y_ = y;
  k1_ = rhs_(t, y);
  if (!finite(k1_)) throw DomainError("right-hand side is not finite at the initial state");
  facold_ = 1e-4;
  if (opt_.fixed_step > 0.0) {
    h_ = opt_.fixed_step;
  } else if (opt_.initial_step > 0.0) {
    h_ = opt_.initial_step;
  } else {
    h_ = initial_step();
  }
}

double Dopri5::error_norm(const Vec2& y0, const Vec2& y1, const Vec2& err) const {
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sk = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    sum += (err[i] / sk) * (err[i] / sk);
  }
  return std::sqrt(sum / 2.0);
}

double Dopri5::initial_step() {
  double dnf = 0.0, dny = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
    dnf += (k1_[i] / sk) * (k1_[i] / sk);
    dny += (y_[i] / sk) * (y_[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);
  const Vec2 y1{y_[0] + h * k1_[0], y_[1] + h * k1_[1]};
  const Vec2 f1 = rhs_(t_ + h, y1);
  if (!finite(f1)) return h * 1e-3;
  double der2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
    der2 += ((f1[i] - k1_[i]) / sk) * ((f1[i] - k1_[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
  h = std::min(100.0 * h, h1);
  if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);
  return h;
}

const DenseStep& Dopri5::advance(double t_limit) {
  const bool fixed = opt_.fixed_step > 0.0;
  const double expo1 = 0.2 - kBeta * 0.75;
  for (;;) {
    if (accepted_ + rejected_ >= opt_.max_steps) {
      throw StiffnessError(t_, y_[0], y_[1], "maximum number of integration steps exceeded");
    }
    double h = fixed ? opt_.fixed_step : h_;
    if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);
    bool last = false;
    if (t_ + h >= t_limit || t_ + 1.01 * h >= t_limit) {
      h = t_limit - t_;
      last = true;
    }
    if (!(h > 1e-14 * std::max(1.0, std::abs(t_)))) {
      throw StiffnessError(t_, y_[0], y_[1], "step size underflow");
    }

    const Vec2& k1 = k1_;
    Vec2 y, k2, k3, k4, k5, k6, k7, y1;
    bool ok = true;
    auto stage = [&](Vec2& k, double c, auto&& combine) {
      if (!ok) return;
      for (int i = 0; i < 2; ++i) y[i] = y_[i] + h * combine(i);
      k = rhs_(t_ + c * h, y);
      ok = finite(k);
    };
    stage(k2, c2, [&](int i) { return a21 * k1[i]; });
    stage(k3, c3, [&](int i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(k4, c4, [&](int i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(k5, c5, [&](int i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    stage(k6, 1.0, [&](int i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    if (ok) {
      for (int i = 0; i < 2; ++i) {
        y1[i] = y_[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      }
      k7 = rhs_(t_ + h, y1);
      ok = finite(k7) && finite(y1);
    }
    if (!ok) {
      ++rejected_;
      if (fixed) throw StiffnessError(t_, y_[0], y_[1], "non-finite right-hand side in fixed-step mode");
      h_ = 0.25 * h;
      continue;
    }

    Vec2 err;
    for (int i = 0; i < 2; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const double en = fixed ? 0.0 : error_norm(y_, y1, err);
    if (!fixed) {
      const double fac11 = std::pow(std::max(en, 1e-300), expo1);
      if (en <= 1.0) {
        double fac = fac11 / std::pow(facold_, kBeta);
        fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
        facold_ = std::max(en, 1e-4);
        h_ = h / fac;
      } else {
        ++rejected_;
        h_ = h / std::min(1.0 / kFacMin, fac11 / kSafe);
        continue;
      }
    }

    DenseStep& d = last_;
    d.t0 = t_;
    d.h = h;
    d.y0 = y_;
    d.y1 = y1;
    for (int i = 0; i < 2; ++i) {
      const double ydiff = y1[i] - y_[i];
      const double bspl = h * k1[i] - ydiff;
      d.rcont[0][i] = y_[i];
      d.rcont[1][i] = ydiff;
      d.rcont[2][i] = bspl;
      d.rcont[3][i] = ydiff - h * k7[i] - bspl;
      d.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    t_ = last ? t_limit : t_ + h;
    y_ = y1;
    k1_ = k7;
    ++accepted_;
    return last_;
  }
}

}  // namespace glacier
