#include "glacier/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glacier/config.hpp"
#include "glacier/csv.hpp"
#include "glacier/equilibria.hpp"
#include "glacier/errors.hpp"
#include "glacier/simulator.hpp"
#include "glacier/stability.hpp"
#include "glacier/verify.hpp"

namespace glacier::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string params;
  std::vector<std::string> sets;
  std::string out;
  std::string format;
  std::optional<double> mu;
  std::optional<double> t_end;
  std::optional<std::string> model;
  bool dimensional = false;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::string plot_script;
  std::optional<double> mu_min, mu_max;
  std::optional<int> n;
};

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Config load(const Options& o) {
  Config cfg = load_config(o.params, o.sets);
  if (o.epsilon) cfg.model.epsilon = *o.epsilon;
  if (o.t_end) cfg.run.t_end = *o.t_end;
  if (o.model) cfg.run.model = model_kind_from_string(*o.model);
  return cfg;
}

std::optional<CriticalPoint> tracked_equilibrium(const Config& cfg) {
  const auto eq = find_equilibria(cfg.model, cfg.run.theta_range, cfg.run.grid_n);
  if (eq.empty()) return std::nullopt;
  if (cfg.run.theta_hint) {
    const double h = *cfg.run.theta_hint;
    return *std::min_element(eq.begin(), eq.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.theta_c - h) < std::abs(b.theta_c - h);
    });
  }
  const auto it = std::find_if(eq.begin(), eq.end(), is_hopf_candidate);
  return it != eq.end() ? *it : eq.front();
}

double resolve_mu(const Options& o, const Config& cfg) {
  if (o.mu) return *o.mu;
  if (cfg.run.mu) return *cfg.run.mu;
  if (cfg.run.mu_factor) {
    const auto cp = tracked_equilibrium(cfg);
    if (!cp || !is_hopf_candidate(*cp)) {
      throw ConfigError("run.mu_factor needs an equilibrium with g' > f' > 0");
    }
    return *cfg.run.mu_factor * *mu_thresholds(*cp, cfg.model.alpha2, cfg.model.gamma).mu0;
  }
  if (cfg.scales) return cfg.scales->mu;
  return 1.0;
}

std::string format_or(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json" && f != "text") throw ConfigError("unknown format '" + f + "'");
  return f;
}

int cmd_scales(const Options& o, std::ostream& out) {
  const Config cfg = load(o);
  if (!cfg.physical) throw ConfigError("the scales command needs a 'physical' block");
  const PhysicalParams& p = *cfg.physical;
  const Scales& s = *cfg.scales;
  struct Row {
    const char* name;
    double value;
    const char* unit;
  };
  const std::vector<Row> rows{
      {"T_star", s.T_star, "K"},
      {"L_star", s.L_star / 1000.0, "km"},
      {"t_star", s.t_star_years, "yr"},
      {"epsilon", cfg.model.epsilon, "1"},
      {"beta", cfg.model.beta, "1"},
      {"mu", s.mu, "1"},
      {"H", p.height_scale(), "m^0.5"},
      {"H_derived", ice_height_scale(p.tau0, p.rho_i, p.grav), "m^0.5"},
      {"m_rate", p.m_rate, "m/yr"},
  };
  const std::string f = format_or(o, "text");
  Output sink(o.out, out);
  if (f == "json") {
    json j = json::object();
    for (const auto& r : rows) j[r.name] = {{"value", r.value}, {"unit", r.unit}};
    *sink << j.dump(2) << '\n';
  } else if (f == "csv") {
    CsvTable t;
    t.header = {"name", "value", "unit"};
    for (const auto& r : rows) t.rows.push_back({r.name, format_double(r.value), r.unit});
    write_csv(*sink, t);
  } else {
    for (const auto& r : rows) *sink << r.name << " = " << format_double(r.value) << ' ' << r.unit << '\n';
  }
  return kSuccess;
}

json analyze_row(const CriticalPoint& cp, const ModelParams& m, double mu) {
  json row = {{"theta_c", cp.theta_c}, {"lambda_c", cp.lambda_c}, {"f1", cp.f1},   {"f2", cp.f2},
              {"f3", cp.f3},           {"g1", cp.g1},           {"g2", cp.g2},   {"xi", cp.xi_c},
              {"xi1", cp.xi1},         {"xi2", cp.xi2},         {"xi3", cp.xi3}, {"mu", mu},
              {"tangency_warning", cp.tangency_warning}};
  row["classification"] = to_string(classify(cp, mu, m.alpha2, m.gamma));
  const EigenPair ev = eigenvalues(cp, mu, m.alpha2, m.gamma);
  row["eigenvalues"] = {{ev.first.real(), ev.first.imag()}, {ev.second.real(), ev.second.imag()}};
  try {
    const MuThresholds t = mu_thresholds(cp, m.alpha2, m.gamma);
    row["thresholds"] = {{"mu1", opt_json(t.mu1)},
                         {"mu2", opt_json(t.mu2)},
                         {"mu0", opt_json(t.mu0)},
                         {"omega0", opt_json(t.omega0)}};
  } catch (const DegenerateSlope&) {
    row["thresholds"] = nullptr;
  }
  row["hopf"] = nullptr;
  if (is_hopf_candidate(cp) && cp.smooth) {
    const HopfData h = hopf_analysis(cp, m.alpha2, m.gamma);
    row["hopf"] = {{"mu0", h.mu0},
                   {"omega0", h.omega0},
                   {"l1", h.l1},
                   {"criticality", to_string(h.criticality)},
                   {"transversality", h.transversality}};
  }
  return row;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const Config cfg = load(o);
  const double mu = resolve_mu(o, cfg);
  const auto eq = find_equilibria(cfg.model, cfg.run.theta_range, cfg.run.grid_n);
  if (eq.empty()) err << "warning: no equilibria in the theta scan range\n";
  json rows = json::array();
  for (const auto& cp : eq) rows.push_back(analyze_row(cp, cfg.model, mu));
  const std::string f = format_or(o, "json");
  Output sink(o.out, out);
  if (f == "csv") {
    CsvTable t;
    t.header = {"theta_c", "lambda_c", "f1", "g1", "classification", "mu0", "omega0", "l1"};
    for (const auto& r : rows) {
      auto cell = [](const json& v) { return v.is_null() ? std::string() : format_double(v.get<double>()); };
      const json& h = r["hopf"];
      t.rows.push_back({format_double(r["theta_c"].get<double>()), format_double(r["lambda_c"].get<double>()),
                        format_double(r["f1"].get<double>()), format_double(r["g1"].get<double>()),
                        r["classification"].get<std::string>(), h.is_null() ? "" : cell(h["mu0"]),
                        h.is_null() ? "" : cell(h["omega0"]), h.is_null() ? "" : cell(h["l1"])});
    }
    write_csv(*sink, t);
  } else {
    *sink << rows.dump(2) << '\n';
  }
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Config cfg = load(o);
  const double mu = resolve_mu(o, cfg);
  State initial;
  if (cfg.run.initial) {
    initial = *cfg.run.initial;
  } else {
    const auto cp = tracked_equilibrium(cfg);
    if (!cp) throw ConfigError("no initial state given and no equilibrium to start from");
    initial = {cp->theta_c + 1e-3, cp->lambda_c};
  }
  if (!(initial.theta > 0.0) || !(initial.lambda > 0.0) ||
      (cfg.run.model == ModelKind::Simplified && initial.lambda > 0.25)) {
    throw ConfigError("initial state outside the model domain");
  }
  if (o.dimensional && !cfg.scales) throw ConfigError("--dimensional needs a 'physical' block");

  IntegrateOptions io;
  io.rel_tol = cfg.run.rel_tol;
  io.abs_tol = cfg.run.abs_tol;
  io.model = cfg.run.model;
  io.sample_dt = cfg.run.sample_dt;
  const Trajectory tr = integrate(cfg.model, mu, initial, cfg.run.t_end, io);
  const Scales* scales = o.dimensional ? &*cfg.scales : nullptr;

  const std::string f = format_or(o, "csv");
  Output sink(o.out, out);
  const CsvTable table = trajectory_table(tr, scales);
  if (f == "json") {
    json j = {{"model", std::string(to_string(tr.model))},
              {"mu", mu},
              {"terminated", std::string(to_string(tr.terminated))},
              {"units", {{"tau", "t_star"}, {"theta", "T_star"}, {"lambda", "L_star"}}}};
    if (scales) {
      j["units"]["t_years"] = "yr";
      j["units"]["T_kelvin"] = "K";
      j["units"]["l_km"] = "km";
      j["t_star_years"] = scales->t_star_years;
    }
    j["columns"] = table.header;
    j["rows"] = table.rows;
    *sink << j.dump() << '\n';
  } else {
    *sink << "# model=" << to_string(tr.model) << " mu=" << format_double(mu)
          << " terminated=" << to_string(tr.terminated) << " units: tau[t*] theta[T*] lambda[L*]";
    if (scales) *sink << " t_star_years=" << format_double(scales->t_star_years);
    *sink << '\n';
    write_csv(*sink, table);
  }
  if (!o.plot_script.empty()) {
    std::ofstream ps(o.plot_script);
    if (!ps) throw ConfigError("cannot open plot script file '" + o.plot_script + "'");
    const std::string data = o.out.empty() ? "trajectory.csv" : o.out;
    ps << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set multiplot layout 2,1\n"
       << "plot '" << data << "' using " << (scales ? "4:5" : "1:2") << " with lines\n"
       << "plot '" << data << "' using " << (scales ? "4:6" : "1:3") << " with lines\n"
       << "unset multiplot\n";
  }
  return tr.terminated == Termination::TimeLimit ? kSuccess : kDomainTermination;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Config cfg = load(o);
  SweepSettings s = cfg.run.sweep;
  if (o.mu_min) s.mu_min = *o.mu_min;
  if (o.mu_max) s.mu_max = *o.mu_max;
  if (o.n) s.n = *o.n;
  if (s.n < 1 || !(s.mu_max >= s.mu_min) || !(s.mu_min > 0.0)) {
    throw ConfigError("sweep needs 0 < mu_min <= mu_max and n >= 1");
  }
  const auto cp = tracked_equilibrium(cfg);
  double scale = 1.0;
  if (s.relative) {
    if (!cp || !is_hopf_candidate(*cp)) throw ConfigError("relative sweep needs an equilibrium with g' > f' > 0");
    scale = *mu_thresholds(*cp, cfg.model.alpha2, cfg.model.gamma).mu0;
  }
  std::vector<double> grid;
  for (int i = 0; i < s.n; ++i) {
    const double w = s.n == 1 ? 0.0 : static_cast<double>(i) / (s.n - 1);
    grid.push_back(scale * (s.mu_min + w * (s.mu_max - s.mu_min)));
  }
  const BifurcationDiagram d =
      sweep_mu(cfg.model, grid, cp ? std::optional(cp->theta_c) : std::nullopt);

  const std::string f = format_or(o, "csv");
  Output sink(o.out, out);
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  if (f == "json") {
    json rows = json::array();
    for (const auto& r : d.rows) {
      rows.push_back({{"mu", r.mu},
                      {"kind", r.kind ? to_string(*r.kind) : "degenerate"},
                      {"period", opt_json(r.period)},
                      {"amplitude_theta", opt_json(r.amplitude_theta)},
                      {"amplitude_lambda", opt_json(r.amplitude_lambda)}});
    }
    *sink << json{{"theta_c", d.theta_c}, {"lambda_c", d.lambda_c}, {"rows", rows}}.dump(2) << '\n';
  } else {
    CsvTable t;
    t.header = {"mu", "kind", "period", "amplitude_theta", "amplitude_lambda"};
    for (const auto& r : d.rows) {
      t.rows.push_back({format_double(r.mu), r.kind ? to_string(*r.kind) : "degenerate", cell(r.period),
                        cell(r.amplitude_theta), cell(r.amplitude_lambda)});
    }
    write_csv(*sink, t);
  }
  return kSuccess;
}

int cmd_nullclines(const Options& o, std::ostream& out) {
  const Config cfg = load(o);
  const NullclineSettings& s = cfg.run.nullclines;
  if (s.n < 2 || !(s.theta_max > s.theta_min)) throw ConfigError("nullclines need theta_min < theta_max and n >= 2");
  CsvTable t;
  t.header = {"theta", "f", "g"};
  for (int i = 0; i < s.n; ++i) {
    const double th = s.theta_min + (s.theta_max - s.theta_min) * i / (s.n - 1);
    t.rows.push_back({format_double(th), format_double(nullcline_f(cfg.model, th)),
                      format_double(nullcline_g(cfg.model, th))});
  }
  const std::string f = format_or(o, "csv");
  Output sink(o.out, out);
  if (f == "json") {
    json j = {{"columns", t.header}, {"rows", t.rows}};
    if (const auto ext = theta_extrema(cfg.model)) j["extrema"] = {ext->first, ext->second};
    *sink << j.dump() << '\n';
  } else {
    write_csv(*sink, t);
  }
  if (!o.plot_script.empty()) {
    std::ofstream ps(o.plot_script);
    if (!ps) throw ConfigError("cannot open plot script file '" + o.plot_script + "'");
    const std::string data = o.out.empty() ? "nullclines.csv" : o.out;
    ps << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set xlabel 'theta'\nset ylabel 'lambda'\n"
       << "plot '" << data << "' using 1:2 with lines, '' using 1:3 with lines\n";
  }
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Config cfg = load(o);
  const double mu = resolve_mu(o, cfg);
  const auto results = run_verification(cfg.model, mu, o.seed);
  bool ok = true;
  const std::string f = format_or(o, "text");
  Output sink(o.out, out);
  if (f == "json") {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"check", r.name}, {"error", r.error}, {"tolerance", r.tolerance}, {"pass", r.pass}});
      ok = ok && r.pass;
    }
    *sink << rows.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      *sink << (r.pass ? "PASS " : "FAIL ") << r.name << " error=" << format_double(r.error)
            << " tol=" << format_double(r.tolerance);
      if (!r.note.empty()) *sink << " (" << r.note << ')';
      *sink << '\n';
      ok = ok && r.pass;
    }
  }
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temperature / ice-sheet oscillator toolkit", "glacier-dyn"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--params", o.params, "parameter file (JSON)")->required();
    sc->add_option("--set", o.sets, "override key.path=value")->take_all();
    sc->add_option("--out", o.out, "output file (default stdout)");
    sc->add_option("--format", o.format, "csv, json or text");
    sc->add_option("--mu", o.mu, "ratio of time scales");
    sc->add_option("--seed", o.seed, "seed for randomized checks");
    sc->add_option("--epsilon", o.epsilon, "snow-line elevation");
  };
  CLI::App* scales = app.add_subcommand("scales", "print the nondimensional scales");
  CLI::App* analyze = app.add_subcommand("analyze", "equilibria, stability and Hopf data");
  CLI::App* simulate = app.add_subcommand("simulate", "integrate a trajectory");
  CLI::App* sweep = app.add_subcommand("sweep", "classification and cycles over a mu grid");
  CLI::App* nullclines = app.add_subcommand("nullclines", "sample both nullclines");
  CLI::App* verify = app.add_subcommand("verify", "closed forms against numerical oracles");
  for (CLI::App* sc : {scales, analyze, simulate, sweep, nullclines, verify}) common(sc);
  simulate->add_option("--t-end", o.t_end, "final nondimensional time");
  simulate->add_option("--model", o.model, "simplified or full");
  simulate->add_flag("--dimensional", o.dimensional, "add dimensional columns");
  simulate->add_option("--plot-script", o.plot_script, "write a gnuplot script");
  nullclines->add_option("--plot-script", o.plot_script, "write a gnuplot script");
  sweep->add_option("--mu-min", o.mu_min, "lower end of the grid");
  sweep->add_option("--mu-max", o.mu_max, "upper end of the grid");
  sweep->add_option("--n", o.n, "number of grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*scales) return cmd_scales(o, out);
    if (*analyze) return cmd_analyze(o, out, err);
    if (*simulate) return cmd_simulate(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*nullclines) return cmd_nullclines(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const OracleMismatch& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainTermination;
  }
  return kConfigError;
}

}  // namespace glacier::cli
