#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "glacier/cli.hpp"
#include "glacier/csv.hpp"
#include "json.hpp"

#ifndef GLACIER_SOURCE_DIR
#define GLACIER_SOURCE_DIR "."
#endif

using namespace glacier;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "glacier-dyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string param_file(const std::string& name) { return std::string(GLACIER_SOURCE_DIR) + "/params/" + name; }

double scale_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
  }
  return -1.0;
}

std::string initial_override(double theta, double lambda) {
  return "run.initial={\"theta\":" + format_double(theta) + ",\"lambda\":" + format_double(lambda) + "}";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("scales report") {
    const Result r = run_cli({"scales", "--params", param_file("table1.json")});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(scale_value(r.out, "T_star") == doctest::Approx(195.55).epsilon(1e-4));
    CHECK(scale_value(r.out, "t_star") == doctest::Approx(33.2e3).epsilon(1e-2));
    CHECK(scale_value(r.out, "L_star") == doctest::Approx(2.76e4).epsilon(5e-3));
    CHECK(scale_value(r.out, "epsilon") == doctest::Approx(0.109).epsilon(5e-3));
    CHECK(scale_value(r.out, "beta") == doctest::Approx(0.7875).epsilon(1e-3));
    const Result half = run_cli({"scales", "--params", param_file("table1.json"), "--set", "physical.B=3.48"});
    CHECK(scale_value(half.out, "T_star") == doctest::Approx(97.77).epsilon(1e-4));
  }

  TEST_CASE("configuration errors exit with code 2") {
    const auto empty = std::filesystem::temp_directory_path() / "glacier_empty.json";
    std::ofstream(empty).close();
    CHECK(run_cli({"scales", "--params", empty.string()}).code == cli::kConfigError);
    const auto bare = std::filesystem::temp_directory_path() / "glacier_model_only.json";
    std::ofstream(bare) << R"({"model":{"beta":0.79}})";
    CHECK(run_cli({"scales", "--params", bare.string()}).code == cli::kConfigError);
    CHECK(run_cli({"scales", "--params", param_file("table1.json"), "--set", "physical.bogus=1"}).code ==
          cli::kConfigError);
    CHECK(run_cli({"analyze"}).code == cli::kConfigError);
    CHECK(run_cli({"simulate", "--params", param_file("table1.json"), "--model", "other"}).code ==
          cli::kConfigError);
  }

  TEST_CASE("analyze lists the three wide-curve equilibria") {
    const Result r = run_cli({"analyze", "--params", param_file("wide_curves.json"), "--format", "json"});
    REQUIRE(r.code == cli::kSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 3);
    CHECK(doc[1]["classification"] == "saddle");
    for (int i : {0, 2}) {
      const std::string k = doc[i]["classification"];
      CHECK((k == "stable_node" || k == "stable_focus"));
    }
    for (const char* mu : {"0.01", "17.3", "400"}) {
      const auto d = nlohmann::json::parse(
          run_cli({"analyze", "--params", param_file("wide_curves.json"), "--format", "json", "--mu", mu}).out);
      CHECK(d[1]["classification"] == "saddle");
    }
  }

  TEST_CASE("analyze reports Hopf data") {
    const Result r = run_cli({"analyze", "--params", param_file("hopf_demo.json"), "--format", "json"});
    REQUIRE(r.code == cli::kSuccess);
    int hopf = 0;
    for (const auto& row : nlohmann::json::parse(r.out)) {
      if (row["hopf"].is_null()) continue;
      ++hopf;
      CHECK(row["hopf"]["mu0"].get<double>() == doctest::Approx(0.3777307698428387).epsilon(1e-9));
      CHECK(row["hopf"]["l1"].get<double>() == doctest::Approx(-187.61269224831744).epsilon(1e-6));
      CHECK(row["hopf"]["criticality"] == "supercritical");
    }
    CHECK(hopf == 1);
  }

  TEST_CASE("simulate from an equilibrium is constant") {
    const auto cp = fixtures::find_equilibria(fixtures::table1())[0];
    const Result r = run_cli({"simulate", "--params", param_file("table1.json"), "--mu", "0.1", "--t-end", "20",
                              "--set", initial_override(cp.theta_c, cp.lambda_c)});
    REQUIRE(r.code == cli::kSuccess);
    std::istringstream in(r.out);
    const Trajectory tr = trajectory_from_table(read_csv(in));
    REQUIRE(tr.states.size() > 10);
    for (const auto& s : tr.states) {
      CHECK(std::abs(s.theta - cp.theta_c) <= 1e-8);
      CHECK(std::abs(s.lambda - cp.lambda_c) <= 1e-8);
    }
  }

  TEST_CASE("full model output carries the regime and floor exit code") {
    const Result r = run_cli({"simulate", "--params", param_file("table1.json"), "--model", "full", "--epsilon",
                              "0.1", "--mu", "1", "--t-end", "50", "--set", initial_override(1.3, 0.05)});
    CHECK(r.code == cli::kDomainTermination);
    std::istringstream in(r.out);
    const CsvTable t = read_csv(in);
    CHECK_NOTHROW(t.column("regime"));
    CHECK(t.rows.back()[t.column("regime")] == "stagnant");
  }

  TEST_CASE("dimensional columns and plot script") {
    const auto script = std::filesystem::temp_directory_path() / "glacier_plot.gp";
    std::filesystem::remove(script);
    const Result r = run_cli({"simulate", "--params", param_file("hopf_demo.json"), "--t-end", "5",
                              "--dimensional", "--plot-script", script.string()});
    REQUIRE(r.code == cli::kSuccess);
    std::istringstream in(r.out);
    const CsvTable t = read_csv(in);
    CHECK_NOTHROW(t.column("T_kelvin"));
    CHECK_NOTHROW(t.column("t_years"));
    CHECK(std::filesystem::exists(script));
  }

  TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "glacier_nullclines.csv";
    const Result r = run_cli({"nullclines", "--params", param_file("wide_curves.json"), "--out", path.string()});
    REQUIRE(r.code == cli::kSuccess);
    std::ifstream in(path);
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 1401);
    const std::size_t fi = t.column("f");
    int extrema = 0;
    for (std::size_t i = 1; i + 1 < t.rows.size(); ++i) {
      const double a = parse_double(t.rows[i - 1][fi]);
      const double b = parse_double(t.rows[i][fi]);
      const double c = parse_double(t.rows[i + 1][fi]);
      if ((b - a) * (c - b) < 0) ++extrema;
    }
    CHECK(extrema == 2);
  }

  TEST_CASE("sweep flips once across the onset") {
    const Result r = run_cli({"sweep", "--params", param_file("hopf_demo.json")});
    REQUIRE(r.code == cli::kSuccess);
    std::istringstream in(r.out);
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 21);
    const std::size_t k = t.column("kind");
    std::vector<std::string> kinds;
    for (const auto& row : t.rows) {
      if (row[k] != "hopf_center") kinds.push_back(row[k]);
    }
    int flips = 0;
    for (std::size_t i = 1; i < kinds.size(); ++i) flips += kinds[i] != kinds[i - 1];
    CHECK(flips == 1);
    CHECK(t.rows.front()[k] == "stable_focus");
    CHECK(t.rows.back()[k] == "unstable_focus");
  }

  TEST_CASE("verify passes on the shipped files") {
    CHECK(run_cli({"verify", "--params", param_file("table1.json")}).code == cli::kSuccess);
    CHECK(run_cli({"verify", "--params", param_file("hopf_demo.json"), "--seed", "9"}).code == cli::kSuccess);
  }

  TEST_CASE("commands are deterministic") {
    const auto a = run_cli({"analyze", "--params", param_file("table1.json"), "--format", "json"});
    const auto b = run_cli({"analyze", "--params", param_file("table1.json"), "--format", "json"});
    CHECK(a.out == b.out);
  }
}
