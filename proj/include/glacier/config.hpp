#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glacier/equilibria.hpp"
#include "glacier/params.hpp"
#include "glacier/simulator.hpp"
#include "json.hpp"

namespace glacier {

struct SweepSettings {
  double mu_min = 0.5;
  double mu_max = 1.5;
  int n = 21;
  /// mu_min and mu_max are multiples of mu0 of the tracked equilibrium.
  bool relative = true;
};

struct NullclineSettings {
  double theta_min = 1.0;
  double theta_max = 2.0;
  int n = 2001;
};

struct RunSettings {
  std::optional<double> mu;
  std::optional<double> mu_factor;
  double t_end = 100.0;
  std::optional<State> initial;
  ModelKind model = ModelKind::Simplified;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double sample_dt = 0.0;
  std::optional<double> theta_hint;
  Interval theta_range = kDefaultThetaRange;
  int grid_n = kDefaultGridN;
  SweepSettings sweep;
  NullclineSettings nullclines;
};

struct Config {
  std::optional<PhysicalParams> physical;
  std::optional<Scales> scales;
  ModelParams model;
  RunSettings run;
  nlohmann::json document;
};

/// Apply "dotted.path=value"; value is parsed as JSON, falling back to a
/// plain string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Throws ConfigError on malformed documents or unknown keys.
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});

nlohmann::json to_json(const SigmoidResponse& r);
nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const ModelParams& p);

}  // namespace glacier
