#include "glacier/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "glacier/errors.hpp"

namespace glacier {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError("'" + where + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError("'" + where + "' must be an integer");
  return j.get<int>();
}

void read(const json& j, const char* key, const std::string& where, double& out) {
  if (j.contains(key)) out = number(j.at(key), where + "." + key);
}

void read_sigmoid(const json& j, const std::string& where, SigmoidResponse& r) {
  check_keys(j, where, {"family", "limit_minus", "limit_plus", "center", "steepness"});
  if (j.contains("family")) {
    if (!j["family"].is_string()) throw ConfigError("'" + where + ".family' must be a string");
    r.family = sigmoid_family_from_string(j["family"].get<std::string>());
  }
  read(j, "limit_minus", where, r.limit_minus);
  read(j, "limit_plus", where, r.limit_plus);
  read(j, "center", where, r.center);
  read(j, "steepness", where, r.steepness);
}

PhysicalParams read_physical(const json& j) {
  check_keys(j, "physical",
             {"Q", "gamma", "A", "B", "tau0", "rho_i", "grav", "s", "h0", "c", "m_rate", "a_rate",
              "alpha1", "alpha2", "H", "albedo", "accum"});
  PhysicalParams p;
  const std::string w = "physical";
  read(j, "Q", w, p.Q);
  read(j, "gamma", w, p.gamma);
  read(j, "A", w, p.A);
  read(j, "B", w, p.B);
  read(j, "tau0", w, p.tau0);
  read(j, "rho_i", w, p.rho_i);
  read(j, "grav", w, p.grav);
  read(j, "s", w, p.s);
  read(j, "h0", w, p.h0);
  read(j, "c", w, p.c);
  read(j, "m_rate", w, p.m_rate);
  read(j, "alpha1", w, p.alpha1);
  read(j, "alpha2", w, p.alpha2);
  if (j.contains("a_rate")) {
    p.a_rate = j["a_rate"].is_null() ? std::nullopt : std::optional(number(j["a_rate"], "physical.a_rate"));
  }
  if (j.contains("H")) {
    p.H = j["H"].is_null() ? std::nullopt : std::optional(number(j["H"], "physical.H"));
  }
  if (j.contains("albedo")) read_sigmoid(j["albedo"], "physical.albedo", p.albedo);
  if (j.contains("accum")) read_sigmoid(j["accum"], "physical.accum", p.accum);
  return p;
}

void read_model(const json& j, ModelParams& m) {
  check_keys(j, "model", {"beta", "gamma", "alpha1", "alpha2", "epsilon", "albedo", "accum"});
  const std::string w = "model";
  read(j, "beta", w, m.beta);
  read(j, "gamma", w, m.gamma);
  read(j, "alpha1", w, m.alpha1);
  read(j, "alpha2", w, m.alpha2);
  read(j, "epsilon", w, m.epsilon);
  if (j.contains("albedo")) read_sigmoid(j["albedo"], "model.albedo", m.albedo);
  if (j.contains("accum")) read_sigmoid(j["accum"], "model.accum", m.accum);
}

void read_run(const json& j, RunSettings& r) {
  check_keys(j, "run",
             {"mu", "mu_factor", "t_end", "initial", "model", "rel_tol", "abs_tol", "sample_dt",
              "theta_hint", "theta_range", "grid_n", "sweep", "nullclines"});
  const std::string w = "run";
  if (j.contains("mu")) r.mu = number(j["mu"], "run.mu");
  if (j.contains("mu_factor")) r.mu_factor = number(j["mu_factor"], "run.mu_factor");
  if (j.contains("theta_hint")) r.theta_hint = number(j["theta_hint"], "run.theta_hint");
  read(j, "t_end", w, r.t_end);
  read(j, "rel_tol", w, r.rel_tol);
  read(j, "abs_tol", w, r.abs_tol);
  read(j, "sample_dt", w, r.sample_dt);
  if (j.contains("grid_n")) r.grid_n = integer(j["grid_n"], "run.grid_n");
  if (j.contains("model")) {
    if (!j["model"].is_string()) throw ConfigError("'run.model' must be a string");
    r.model = model_kind_from_string(j["model"].get<std::string>());
  }
  if (j.contains("initial")) {
    const json& i = j["initial"];
    check_keys(i, "run.initial", {"theta", "lambda"});
    if (!i.contains("theta") || !i.contains("lambda")) {
      throw ConfigError("'run.initial' needs both theta and lambda");
    }
    r.initial = State{number(i["theta"], "run.initial.theta"), number(i["lambda"], "run.initial.lambda")};
  }
  if (j.contains("theta_range")) {
    const json& t = j["theta_range"];
    if (!t.is_array() || t.size() != 2) throw ConfigError("'run.theta_range' must be [lo, hi]");
    r.theta_range = {number(t[0], "run.theta_range[0]"), number(t[1], "run.theta_range[1]")};
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, "run.sweep", {"mu_min", "mu_max", "n", "relative"});
    read(s, "mu_min", "run.sweep", r.sweep.mu_min);
    read(s, "mu_max", "run.sweep", r.sweep.mu_max);
    if (s.contains("n")) r.sweep.n = integer(s["n"], "run.sweep.n");
    if (s.contains("relative")) {
      if (!s["relative"].is_boolean()) throw ConfigError("'run.sweep.relative' must be a boolean");
      r.sweep.relative = s["relative"].get<bool>();
    }
  }
  if (j.contains("nullclines")) {
    const json& n = j["nullclines"];
    check_keys(n, "run.nullclines", {"theta_min", "theta_max", "n"});
    read(n, "theta_min", "run.nullclines", r.nullclines.theta_min);
    read(n, "theta_max", "run.nullclines", r.nullclines.theta_max);
    if (n.contains("n")) r.nullclines.n = integer(n["n"], "run.nullclines.n");
  }
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must have the form key.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  if (!doc.is_object()) doc = json::object();
  json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError("override path '" + path + "' has an empty component");
    parts.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& child = (*node)[parts[i]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) throw ConfigError("override path '" + path + "' crosses a non-object");
    node = &child;
  }
  (*node)[parts.back()] = parse_value(assignment.substr(eq + 1));
}

Config parse_config(const json& doc) {
  check_keys(doc, "", {"physical", "model", "run"});
  Config cfg;
  cfg.document = doc;
  try {
    if (doc.contains("physical")) {
      cfg.physical = read_physical(doc["physical"]);
      auto [m, s] = nondimensionalize(*cfg.physical);
      cfg.model = m;
      cfg.scales = s;
    }
    if (doc.contains("model")) read_model(doc["model"], cfg.model);
    if (doc.contains("run")) read_run(doc["run"], cfg.run);
    cfg.model.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
  return cfg;
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("parameter file '" + path + "' is not valid JSON: " + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

json to_json(const SigmoidResponse& r) {
  return {{"family", std::string(to_string(r.family))},
          {"limit_minus", r.limit_minus},
          {"limit_plus", r.limit_plus},
          {"center", r.center},
          {"steepness", r.steepness}};
}

json to_json(const PhysicalParams& p) {
  json j = {{"Q", p.Q},         {"gamma", p.gamma},   {"A", p.A},           {"B", p.B},
            {"tau0", p.tau0},   {"rho_i", p.rho_i},   {"grav", p.grav},     {"s", p.s},
            {"h0", p.h0},       {"c", p.c},           {"m_rate", p.m_rate}, {"alpha1", p.alpha1},
            {"alpha2", p.alpha2}, {"albedo", to_json(p.albedo)}, {"accum", to_json(p.accum)}};
  j["H"] = p.H ? json(*p.H) : json(nullptr);
  if (p.a_rate) j["a_rate"] = *p.a_rate;
  return j;
}

json to_json(const ModelParams& p) {
  return {{"beta", p.beta},     {"gamma", p.gamma},   {"alpha1", p.alpha1},
          {"alpha2", p.alpha2}, {"epsilon", p.epsilon}, {"albedo", to_json(p.albedo)},
          {"accum", to_json(p.accum)}};
}

}  // namespace glacier
