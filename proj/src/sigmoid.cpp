#include "glacier/sigmoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glacier/errors.hpp"

namespace glacier {

namespace {

double tanh_derivative(double x, int order) {
  const double t = std::tanh(x);
  if (order == 0) return t;
  // sech^2 via cosh keeps full relative accuracy in the tails.
  const double c = std::cosh(x);
  const double s2 = std::isinf(c) ? 0.0 : 1.0 / (c * c);
  switch (order) {
    case 1: return s2;
    case 2: return -2.0 * t * s2;
    default: return (6.0 * t * t - 2.0) * s2;
  }
}

double erf_derivative(double x, int order) {
  if (order == 0) return std::erf(x);
  const double d1 = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x);
  switch (order) {
    case 1: return d1;
    case 2: return -2.0 * x * d1;
    default: return (4.0 * x * x - 2.0) * d1;
  }
}

double ramp_derivative(double x, int order) {
  if (order == 0) return std::clamp(x, -1.0, 1.0);
  if (std::abs(x) == 1.0) {
    throw NonDifferentiablePoint("piecewise-linear sigmoid is not differentiable at x = " +
                                 std::to_string(x));
  }
  if (order == 1) return std::abs(x) < 1.0 ? 1.0 : 0.0;
  return 0.0;
}

}  // namespace

std::string_view to_string(SigmoidFamily family) {
  switch (family) {
    case SigmoidFamily::Tanh: return "tanh";
    case SigmoidFamily::Logistic: return "logistic";
    case SigmoidFamily::Erf: return "erf";
    case SigmoidFamily::PiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

SigmoidFamily sigmoid_family_from_string(std::string_view name) {
  if (name == "tanh") return SigmoidFamily::Tanh;
  if (name == "logistic") return SigmoidFamily::Logistic;
  if (name == "erf") return SigmoidFamily::Erf;
  if (name == "piecewise_linear") return SigmoidFamily::PiecewiseLinear;
  throw ConfigError("unknown sigmoid family '" + std::string(name) +
                    "' (expected tanh, logistic, erf or piecewise_linear)");
}

double sigmoid_eval(SigmoidFamily family, double x, int order) {
  if (order < 0 || order > 3) throw DomainError("sigmoid derivative order must be in 0..3");
  if (!std::isfinite(x)) throw DomainError("sigmoid argument must be finite");
  switch (family) {
    case SigmoidFamily::Tanh: return tanh_derivative(x, order);
    case SigmoidFamily::Logistic:
      return tanh_derivative(0.5 * x, order) * std::pow(0.5, order);
    case SigmoidFamily::Erf: return erf_derivative(x, order);
    case SigmoidFamily::PiecewiseLinear: return ramp_derivative(x, order);
  }
  throw DomainError("unknown sigmoid family");
}

void SigmoidResponse::validate() const {
  if (!std::isfinite(limit_minus) || !std::isfinite(limit_plus) || !std::isfinite(center) ||
      !std::isfinite(steepness)) {
    throw DomainError("sigmoid response fields must be finite");
  }
  if (steepness <= 0.0) throw DomainError("sigmoid response steepness must be positive");
}

double SigmoidResponse::operator()(double theta, int order) const {
  const double u = (theta - center) / steepness;
  const double half_span = 0.5 * (limit_plus - limit_minus);
  if (order == 0) return 0.5 * (limit_plus + limit_minus) + half_span * sigmoid_eval(family, u, 0);
  return half_span * sigmoid_eval(family, u, order) / std::pow(steepness, order);
}

}  // namespace glacier
