#include "glacier/params.hpp"

#include <cmath>
#include <string>

#include "glacier/errors.hpp"

namespace glacier {

namespace {

void require_positive(double v, const char* symbol) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ScaleError(symbol, std::string("parameter ") + symbol + " must be positive and finite");
  }
}

void check_limits(const SigmoidResponse& r, const char* name) {
  r.validate();
  if (r.limit_minus < 0.0 || r.limit_minus > 1.0 || r.limit_plus < 0.0 || r.limit_plus > 1.0) {
    throw DomainError(std::string(name) + " limits must lie in [0, 1]");
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(Q, "Q");
  require_positive(B, "B");
  require_positive(tau0, "tau0");
  require_positive(rho_i, "rho_i");
  require_positive(grav, "grav");
  require_positive(c, "c");
  require_positive(m_rate, "m_rate");
  require_positive(s, "s");
  require_positive(alpha2, "alpha2");
  if (H) require_positive(*H, "H");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  if (!(A < 0.0)) throw ScaleError("beta", "A must be negative so that beta = -4A/Q > 0");
  if (!std::isfinite(h0)) throw DomainError("h0 must be finite");
  check_limits(albedo, "albedo");
  check_limits(accum, "accum");
}

double PhysicalParams::height_scale() const {
  return H ? *H : ice_height_scale(tau0, rho_i, grav);
}

void ModelParams::validate() const {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (!(alpha2 > 0.0)) throw DomainError("alpha2 must be positive");
  if (!std::isfinite(alpha1) || !std::isfinite(epsilon)) {
    throw DomainError("alpha1 and epsilon must be finite");
  }
  check_limits(albedo, "albedo");
  check_limits(accum, "accum");
}

void Scales::validate() const {
  require_positive(T_star, "T*");
  require_positive(L_star, "L*");
  require_positive(t_star_years, "t*");
  require_positive(mu, "mu");
}

double ice_height_scale(double tau0, double rho_i, double grav) {
  require_positive(tau0, "tau0");
  require_positive(rho_i, "rho_i");
  require_positive(grav, "grav");
  return std::sqrt(4.0 * tau0 / (3.0 * rho_i * grav));
}

double ice_profile_height(double x, double l, double H) {
  if (!(l > 0.0)) throw DomainError("ice sheet half-width must be positive");
  const double ax = std::abs(x);
  if (ax > l) throw OutOfProfile("|x| exceeds the ice sheet half-width");
  if (ax == l) return 0.0;
  return H * std::sqrt(l) * std::sqrt(1.0 - ax / l);
}

std::pair<ModelParams, Scales> nondimensionalize(const PhysicalParams& p) {
  p.validate();
  const double H = p.height_scale();
  const double H2 = H * H;

  Scales sc;
  sc.T_star = p.Q / (4.0 * p.B);
  sc.L_star = H2 / (p.s * p.s);
  sc.t_star_years = 1.5 * H2 / (p.m_rate * p.s);
  const double m_per_second = p.m_rate / kSecondsPerYear;
  sc.mu = 1.5 * p.B * H2 / (m_per_second * p.s * p.c);
  sc.validate();

  ModelParams m;
  m.beta = -4.0 * p.A / p.Q;
  m.gamma = p.gamma;
  m.alpha1 = p.alpha1;
  m.alpha2 = p.alpha2;
  m.epsilon = p.s * p.h0 / H2;
  m.albedo = p.albedo;
  m.accum = p.accum;
  return {m, sc};
}

double ablation_rate_for_time_scale(double t_star_years, double H, double s) {
  require_positive(t_star_years, "t*");
  return 1.5 * H * H / (t_star_years * s);
}

DimensionalState to_dimensional(const State& s, const Scales& scales) {
  return {scales.T_star * s.theta, scales.L_star * s.lambda};
}

State from_dimensional(const DimensionalState& d, const Scales& scales) {
  return {d.T_kelvin / scales.T_star, d.l_meters / scales.L_star};
}

}  // namespace glacier
