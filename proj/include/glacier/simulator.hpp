#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "glacier/model.hpp"
#include "glacier/ode.hpp"
#include "glacier/stability.hpp"

namespace glacier {

enum class ModelKind { Simplified, Full };
enum class Termination { TimeLimit, LambdaFloor, ComplexSnowline };

std::string_view to_string(ModelKind m);
std::string_view to_string(Termination t);
ModelKind model_kind_from_string(std::string_view s);

inline constexpr double kLambdaFloor = 1e-12;

struct Trajectory {
  ModelKind model = ModelKind::Simplified;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Regime> regimes;  // full model only
  Termination terminated = Termination::TimeLimit;
  /// Indices into times/states where the full model switched regime.
  std::vector<std::size_t> switches;
};

struct IntegrateOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  ModelKind model = ModelKind::Simplified;
  double lambda_floor = kLambdaFloor;
  double fixed_step = 0.0;
  /// > 0 records uniformly spaced samples instead of every accepted step.
  double sample_dt = 0.0;
  double max_step = 0.0;
};

Trajectory integrate(const ModelParams& p, double mu, const State& initial, double t_end,
                     const IntegrateOptions& opt);

Trajectory integrate(const ModelParams& p, double mu, const State& initial, double t_end,
                     double rel_tol = 1e-9, double abs_tol = 1e-11,
                     ModelKind model = ModelKind::Simplified);

struct LimitCycle {
  double period = 0.0;
  double amplitude_theta = 0.0;
  double amplitude_lambda = 0.0;
  double theta_min = 0.0, theta_max = 0.0;
  double lambda_min = 0.0, lambda_max = 0.0;
  std::vector<State> section_points;
  bool converged = false;
  Termination terminated = Termination::TimeLimit;
};

struct CycleOptions {
  double perturbation = 1e-3;
  double transient = 0.0;
  double max_time = 1e5;
  double tol = 1e-7;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double min_radius = 1e-7;
};

/// Attracting periodic orbit around cp located on the section
/// {theta = theta_c, dtheta/dtau > 0}, or empty when none is found.
std::optional<LimitCycle> poincare_cycle(const ModelParams& p, double mu, const CriticalPoint& cp,
                                         const CycleOptions& opt);

std::optional<LimitCycle> poincare_cycle(const ModelParams& p, double mu, const CriticalPoint& cp,
                                         double transient, double max_time, double tol);

std::vector<std::pair<double, std::optional<double>>> amplitude_curve(
    const ModelParams& p, const CriticalPoint& cp, const std::vector<double>& mus,
    const CycleOptions& opt = {});

struct DiagramRow {
  double mu = 0.0;
  std::optional<Classification> kind;  // empty when the equilibrium was lost
  std::optional<double> period;
  std::optional<double> amplitude_theta;
  std::optional<double> amplitude_lambda;
};

struct BifurcationDiagram {
  double theta_c = 0.0;
  double lambda_c = 0.0;
  std::vector<DiagramRow> rows;
};

/// theta_hint selects the tracked equilibrium (nearest theta_c); by default
/// the first Hopf candidate, else the first equilibrium.
BifurcationDiagram sweep_mu(const ModelParams& p, std::vector<double> mu_grid,
                            std::optional<double> theta_hint = std::nullopt,
                            const CycleOptions& opt = {});

}  // namespace glacier
