#pragma once

#include <string>
#include <string_view>

namespace glacier {

/// Normalised sigmoid shapes: odd, nondecreasing, limits -1 and +1.
enum class SigmoidFamily {
  Tanh,
  Logistic,         // 2/(1+exp(-x)) - 1, i.e. tanh(x/2)
  Erf,
  PiecewiseLinear,  // clamp(x, -1, 1); kinks at x = +-1
};

std::string_view to_string(SigmoidFamily family);
SigmoidFamily sigmoid_family_from_string(std::string_view name);

/// True when derivatives up to order three exist everywhere.
constexpr bool is_smooth(SigmoidFamily family) {
  return family != SigmoidFamily::PiecewiseLinear;
}

/// Derivative of the given order (0..3) of the normalised sigmoid at x.
/// Throws NonDifferentiablePoint for PiecewiseLinear at a kink when order >= 1.
double sigmoid_eval(SigmoidFamily family, double x, int order = 0);

/// Bounded monotone response rescaled from a normalised sigmoid:
///   r(theta) = (limit_plus + limit_minus)/2
///            + (limit_plus - limit_minus)/2 * sigma((theta - center)/steepness)
/// Houses both the ocean albedo (decreasing) and the accumulation ratio
/// (increasing).
struct SigmoidResponse {
  double limit_minus = 0.0;
  double limit_plus = 1.0;
  double center = 0.0;
  double steepness = 1.0;
  SigmoidFamily family = SigmoidFamily::Tanh;

  /// Throws DomainError if steepness <= 0 or any field is not finite.
  void validate() const;

  double operator()(double theta, int order = 0) const;

  double lower() const { return limit_minus < limit_plus ? limit_minus : limit_plus; }
  double upper() const { return limit_minus < limit_plus ? limit_plus : limit_minus; }
};

/// response_eval in functional form.
inline double response_eval(const SigmoidResponse& curve, double theta, int order = 0) {
  return curve(theta, order);
}

}  // namespace glacier
