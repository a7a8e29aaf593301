#include "glacier/model.hpp"

#include <cmath>

#include "glacier/errors.hpp"

namespace glacier {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Accumulating: return "accumulating";
    case Regime::Stagnant: return "stagnant";
    case Regime::Nucleation: return "nucleation";
  }
  return "unknown";
}

double continental_albedo(const ModelParams& p, double lambda) {
  return p.alpha1 + p.alpha2 * lambda;
}

double lambda0(double lambda, double epsilon) {
  if (!(lambda > 0.0)) throw DomainError("lambda0 requires lambda > 0");
  const double radicand = epsilon + 2.0 * lambda + 0.25;
  if (radicand < 0.0) throw ComplexSnowline("negative radicand in snow-line position");
  const double root = std::sqrt(radicand);
  const double shift = epsilon + lambda + 0.5;
  if (shift > 0.0) {
    // (root - shift) rewritten as (radicand - shift^2) / (root + shift)
    const double numerator = lambda - (epsilon + lambda) * (epsilon + lambda);
    return numerator / (lambda * (root + shift));
  }
  return (root - shift) / lambda;
}

double temperature_rate(const ModelParams& p, double mu, double theta, double lambda) {
  return mu * (1.0 + p.beta - p.gamma * continental_albedo(p, lambda) -
               (1.0 - p.gamma) * p.albedo(theta) - theta);
}

Derivative vector_field(const ModelParams& p, double mu, const State& s) {
  if (!(s.lambda > 0.0)) throw DomainError("vector_field requires lambda > 0");
  const double xi = p.accum(s.theta);
  const double sl = std::sqrt(s.lambda);
  return {temperature_rate(p, mu, s.theta, s.lambda),
          sl * ((1.0 + xi) * (1.0 - 4.0 * s.lambda) - 1.0)};
}

Regime full_regime(double lambda, double epsilon) {
  if (!(lambda > 0.0)) throw DomainError("vector_field_full requires lambda > 0");
  if (epsilon < 0.0 && lambda < -0.5 * epsilon) return Regime::Nucleation;
  return lambda0(lambda, epsilon) >= 0.0 ? Regime::Accumulating : Regime::Stagnant;
}

FullDerivative vector_field_full(const ModelParams& p, double mu, const State& s) {
  const Regime regime = full_regime(s.lambda, p.epsilon);
  const double sl = std::sqrt(s.lambda);
  const double xi = p.accum(s.theta);
  FullDerivative out;
  out.dtheta = temperature_rate(p, mu, s.theta, s.lambda);
  out.regime = regime;
  switch (regime) {
    case Regime::Nucleation:
      out.dlambda = -xi * p.epsilon / (2.0 * sl);
      break;
    case Regime::Accumulating:
      out.dlambda = sl * ((1.0 + xi) * lambda0(s.lambda, p.epsilon) - 1.0);
      break;
    case Regime::Stagnant:
      out.dlambda = -sl;
      break;
  }
  return out;
}

double nullcline_f(const ModelParams& p, double theta, int order) {
  const double g = p.gamma;
  switch (order) {
    case 0:
      return ((1.0 + p.beta - (1.0 - g) * p.albedo(theta) - theta) / g - p.alpha1) / p.alpha2;
    case 1:
      return -((1.0 - g) * p.albedo(theta, 1) + 1.0) / (g * p.alpha2);
    case 2:
    case 3:
      return -(1.0 - g) / (g * p.alpha2) * p.albedo(theta, order);
    default:
      throw DomainError("nullcline derivative order must be 0..3");
  }
}

double nullcline_g(const ModelParams& p, double theta, int order) {
  if (order < 0 || order > 3) throw DomainError("nullcline derivative order must be 0..3");
  const double xi = p.accum(theta);
  const double u = 1.0 + xi;
  if (order == 0) return 0.25 * xi / u;
  const double x1 = p.accum(theta, 1);
  if (order == 1) return 0.25 * x1 / (u * u);
  const double x2 = p.accum(theta, 2);
  if (order == 2) return 0.25 * (x2 * u - 2.0 * x1 * x1) / (u * u * u);
  const double x3 = p.accum(theta, 3);
  return 0.25 * (x3 / (u * u) - 6.0 * x1 * x2 / (u * u * u) + 6.0 * x1 * x1 * x1 / (u * u * u * u));
}

}  // namespace glacier
