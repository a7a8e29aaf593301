#pragma once

#include <optional>
#include <utility>

#include "glacier/sigmoid.hpp"

namespace glacier {

inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

/// Dimensional inputs in SI units (rates in m/yr). Defaults are the typical
/// present-day values; the response curves are already expressed in the
/// nondimensional temperature theta.
struct PhysicalParams {
  double Q = 1361.0;         // solar constant, W m^-2
  double gamma = 0.3;        // continental area fraction
  double A = -267.96;        // OLR intercept, W m^-2
  double B = 1.74;           // OLR slope, W m^-2 K^-1
  double tau0 = 0.3e5;       // ice yield stress, Pa
  double rho_i = 0.92e3;     // ice density, kg m^-3
  double grav = 9.81;        // m s^-2
  double s = 0.4e-3;         // 0 C isotherm slope
  double h0 = 1200.0;        // isotherm height over the Arctic Ocean, m (may be negative)
  double c = 1.0e7;          // column heat capacity m_a c_a / A_E, J m^-2 K^-1
  double m_rate = 0.498;     // ablation rate, m/yr (fixes t* = 33.2 kyr)
  std::optional<double> a_rate;  // accumulation rate, m/yr; informational
  double alpha1 = 0.25;
  double alpha2 = 4.0;
  /// Tabulated ice height scale H in m^(1/2). When empty, H is derived from
  /// tau0, rho_i and grav.
  std::optional<double> H = 2.1;
  SigmoidResponse albedo{0.85, 0.25, 1.4, 0.015, SigmoidFamily::Tanh};
  SigmoidResponse accum{0.1, 0.5, 1.43, 0.0027, SigmoidFamily::Tanh};

  /// Throws DomainError / ScaleError on violated invariants.
  void validate() const;
  double height_scale() const;
};

/// Dimensionless parameters of the coupled temperature / ice-extent system.
struct ModelParams {
  double beta = 0.7875;
  double gamma = 0.3;
  double alpha1 = 0.25;
  double alpha2 = 4.0;
  double epsilon = 0.0;
  SigmoidResponse albedo{0.85, 0.25, 1.4, 0.015, SigmoidFamily::Tanh};
  SigmoidResponse accum{0.1, 0.5, 1.43, 0.0027, SigmoidFamily::Tanh};

  void validate() const;
  bool smooth() const { return is_smooth(albedo.family) && is_smooth(accum.family); }
};

struct Scales {
  double T_star = 0.0;       // K
  double L_star = 0.0;       // m
  double t_star_years = 0.0; // yr
  double mu = 0.0;

  void validate() const;
};

/// Point of the (theta, lambda) phase plane.
struct State {
  double theta = 0.0;
  double lambda = 0.0;
};

struct DimensionalState {
  double T_kelvin = 0.0;
  double l_meters = 0.0;
};

/// H = sqrt(4 tau0 / (3 rho_i g)), in m^(1/2).
double ice_height_scale(double tau0, double rho_i, double grav);

/// Parabolic plastic-flow profile h(x) = H sqrt(l) sqrt(1 - |x|/l).
double ice_profile_height(double x, double l, double H);

std::pair<ModelParams, Scales> nondimensionalize(const PhysicalParams& p);

/// Ablation rate (m/yr) that yields the requested time scale t* for given H, s.
double ablation_rate_for_time_scale(double t_star_years, double H, double s);

DimensionalState to_dimensional(const State& s, const Scales& scales);
State from_dimensional(const DimensionalState& d, const Scales& scales);
inline double to_dimensional_time(double tau, const Scales& scales) { return tau * scales.t_star_years; }
inline double from_dimensional_time(double t_years, const Scales& scales) { return t_years / scales.t_star_years; }

}  // namespace glacier
