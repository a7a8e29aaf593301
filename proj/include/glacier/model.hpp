#pragma once

#include <string_view>

#include "glacier/params.hpp"

namespace glacier {

enum class Regime { Accumulating, Stagnant, Nucleation };

std::string_view to_string(Regime r);

struct Derivative {
  double dtheta = 0.0;
  double dlambda = 0.0;
};

struct FullDerivative {
  double dtheta = 0.0;
  double dlambda = 0.0;
  Regime regime = Regime::Accumulating;
};

/// alpha1 + alpha2 * lambda
double continental_albedo(const ModelParams& p, double lambda);

/// Relative snow-line position on the ice sheet, lambda0(lambda, epsilon).
double lambda0(double lambda, double epsilon);

/// Energy balance right-hand side; shared by both models.
double temperature_rate(const ModelParams& p, double mu, double theta, double lambda);

/// Simplified system (small-epsilon mass balance).
Derivative vector_field(const ModelParams& p, double mu, const State& s);

/// Regime-switching mass balance with finite epsilon.
FullDerivative vector_field_full(const ModelParams& p, double mu, const State& s);

/// Regime that vector_field_full would select at lambda.
Regime full_regime(double lambda, double epsilon);

/// Temperature nullcline lambda = f(theta) and its derivatives.
double nullcline_f(const ModelParams& p, double theta, int order = 0);

/// Ice nullcline lambda = g(theta) = xi / (4 (1 + xi)) and its derivatives.
double nullcline_g(const ModelParams& p, double theta, int order = 0);

}  // namespace glacier
