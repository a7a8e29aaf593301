#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "glacier/equilibria.hpp"
#include "glacier/errors.hpp"
#include "glacier/oracle.hpp"

using namespace glacier;

TEST_SUITE("equilibria") {
  TEST_CASE("extrema of the temperature nullcline") {
    ModelParams p = fixtures::table1();
    const auto ext = theta_extrema(p);
    REQUIRE(ext.has_value());
    CHECK(ext->first < 1.4);
    CHECK(ext->second > 1.4);
    CHECK(std::abs(ext->first + ext->second - 2.8) <= 1e-9);
    CHECK(std::abs(ext->second - ext->first) < 0.2);
    CHECK(std::abs(nullcline_f(p, ext->first, 1)) <= 1e-10);
    CHECK(std::abs(nullcline_f(p, ext->second, 1)) <= 1e-10);
    p.albedo.steepness = 10.0;
    CHECK_FALSE(theta_extrema(p).has_value());
  }

  TEST_CASE("ramp albedo extrema sit at the kinks") {
    ModelParams p = fixtures::table1();
    p.albedo.family = SigmoidFamily::PiecewiseLinear;
    const auto ext = theta_extrema(p);
    REQUIRE(ext.has_value());
    CHECK(ext->first == doctest::Approx(1.385));
    CHECK(ext->second == doctest::Approx(1.415));
  }

  TEST_CASE("three crossings for the wide-curve configuration") {
    const ModelParams p = fixtures::wide_curves();
    const auto eq = find_equilibria(p);
    REQUIRE(eq.size() == 3);
    CHECK(count_classification(p) == EquilibriumCount::AtLeastThree);
    for (std::size_t i = 0; i < eq.size(); ++i) {
      CHECK(std::abs(nullcline_f(p, eq[i].theta_c) - nullcline_g(p, eq[i].theta_c)) <= 1e-12);
      CHECK(eq[i].lambda_c > 0.0);
      CHECK(eq[i].lambda_c < 0.25);
      if (i > 0) CHECK(eq[i].theta_c > eq[i - 1].theta_c);
    }
    CHECK(eq[0].theta_c == doctest::Approx(1.1378).epsilon(1e-4));
    CHECK(eq[1].theta_c == doctest::Approx(1.2274).epsilon(1e-4));
    CHECK(eq[2].theta_c == doctest::Approx(1.4026).epsilon(1e-4));
  }

  TEST_CASE("table values give three equilibria") {
    const auto eq = find_equilibria(fixtures::table1());
    REQUIRE(eq.size() == 3);
    CHECK(eq[0].theta_c == doctest::Approx(1.0903).epsilon(1e-4));
    CHECK(eq[1].theta_c == doctest::Approx(1.4086).epsilon(1e-4));
    CHECK(eq[2].theta_c == doctest::Approx(1.4349).epsilon(1e-4));
  }

  TEST_CASE("tiny accumulation ratio leaves one equilibrium") {
    ModelParams p = fixtures::wide_curves();
    p.accum.limit_minus = 1e-3;
    p.accum.limit_plus = 2e-3;
    CHECK(count_classification(p) == EquilibriumCount::One);
    const auto eq = find_equilibria(p);
    REQUIRE(eq.size() == 1);
    CHECK(std::abs(nullcline_f(p, eq[0].theta_c) - nullcline_g(p, eq[0].theta_c)) <= 1e-12);
  }

  TEST_CASE("shallow albedo gradient is degenerate with a single crossing") {
    ModelParams p = fixtures::table1();
    p.albedo.steepness = 10.0;
    CHECK(count_classification(p) == EquilibriumCount::Degenerate);
    CHECK(find_equilibria(p).size() == 1);
  }

  TEST_CASE("bad scan settings") {
    const ModelParams p = fixtures::table1();
    CHECK_THROWS_AS(find_equilibria(p, Interval{-1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(find_equilibria(p, kDefaultThetaRange, 50), DomainError);
  }

  TEST_CASE("tangency is reported") {
    const auto [p, t] = fixtures::construct_tangency(fixtures::hopf_demo(), 1.405, 1.4169);
    bool found = false;
    for (const auto& cp : find_equilibria(p)) {
      if (std::abs(cp.theta_c - t) < 1e-6) found = cp.tangency_warning;
    }
    CHECK(found);
    CHECK(count_classification(p) == EquilibriumCount::Degenerate);
  }

  TEST_CASE("roots are stable under grid refinement") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
      const ModelParams p = fixtures::random_params(rng);
      const auto a = find_equilibria(p, kDefaultThetaRange, 2000);
      const auto b = find_equilibria(p, kDefaultThetaRange, 4000);
      bool tangent = false;
      for (const auto& cp : a) tangent = tangent || cp.tangency_warning;
      if (tangent) continue;
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k].theta_c - b[k].theta_c) <= 1e-10);
    }
  }

  TEST_CASE("count classification agrees with the root count") {
    std::mt19937_64 rng(12);
    int compared = 0;
    for (int i = 0; compared < 100 && i < 1000; ++i) {
      const ModelParams p = fixtures::random_params(rng);
      const auto c = count_classification(p);
      if (c == EquilibriumCount::Degenerate) continue;
      const std::size_t n = find_equilibria(p).size();
      ++compared;
      switch (c) {
        case EquilibriumCount::One: CHECK(n == 1); break;
        case EquilibriumCount::AtLeastThree: CHECK(n == 3); break;
        case EquilibriumCount::Five: CHECK(n == 5); break;
        default: break;
      }
    }
    CHECK(compared == 100);
  }

  TEST_CASE("branch examples") {
    const BranchPair z = lambda_branches(0.5, 0.0);
    CHECK(std::abs(z.lambda1) <= 1e-15);
    CHECK(z.lambda2 == doctest::Approx(0.12).epsilon(1e-14));
    const BranchPair b = lambda_branches(0.5, 0.02);
    CHECK(std::abs(b.lambda1 - 0.0015241998455111526) <= 1e-12);
    CHECK(std::abs(b.lambda2 - 0.09447580015448857) <= 1e-12);
    CHECK(b.bounds1.lo == doctest::Approx(0.0012));
    CHECK(b.bounds1.hi == doctest::Approx(0.0048));
    CHECK(b.bounds2.lo == doctest::Approx(0.084));
    CHECK(b.bounds2.hi == doctest::Approx(0.096));
    CHECK(b.bounds1.contains(b.lambda1));
    CHECK(b.bounds2.contains(b.lambda2));
    const BranchPair c = lambda_branches(0.5, 0.049);
    CHECK(std::abs(c.lambda1 - 0.022114718625761462) <= 1e-12);
    CHECK(std::abs(c.lambda2 - 0.039085281374237626) <= 1e-12);
    const auto [i1, i2] = branch_bounds(0.5, 0.0);
    CHECK(i1.lo == 0.0);
    CHECK(i1.hi == 0.0);
    CHECK(i2.lo == doctest::Approx(0.12));
    CHECK(i2.hi == doctest::Approx(0.12));
  }

  TEST_CASE("branch thresholds") {
    CHECK(branch_epsilon_ceiling(0.5) == doctest::Approx(0.05));
    try {
      lambda_branches(0.5, 0.05);
      FAIL("expected NoBranches");
    } catch (const NoBranches& e) {
      CHECK(e.threshold() == doctest::Approx(0.05));
    }
    CHECK_THROWS_AS(lambda_branches(0.5, -10.0), NoBranches);
  }

  TEST_CASE("branches agree with the scan oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double xi = 0.05 + 0.95 * u(rng);
      const double lo = branch_epsilon_floor(xi);
      const double hi = branch_epsilon_ceiling(xi);
      const double eps = u(rng) < 0.5 ? 0.999 * hi * u(rng) : lo * u(rng);
      const BranchPair b = lambda_branches(xi, eps);
      const OracleBranches o = bisect_lambda_branches(xi, eps);
      CHECK(std::abs(b.lambda2 - o.lambda2) <= 1e-10);
      if (!o.lambda1_on_boundary) CHECK(std::abs(b.lambda1 - o.lambda1) <= 1e-10);
      CHECK(b.bounds1.contains(b.lambda1, 1e-12));
      CHECK(b.bounds2.contains(b.lambda2, 1e-12));
    }
  }

  TEST_CASE("upper branch at zero epsilon stays below two ninths") {
    for (double xi = 0.0; xi <= 1.0; xi += 1e-3) {
      CHECK(xi * (1 + xi) / ((2 + xi) * (2 + xi)) <= 2.0 / 9.0 + 1e-15);
    }
    CHECK(lambda_branches(1.0, 0.0).lambda2 == doctest::Approx(2.0 / 9.0));
  }

  TEST_CASE("maximum of the snow-line position") {
    const auto [lm, v] = lambda0_max(0.1);
    CHECK(lm == doctest::Approx(0.07));
    CHECK(v == doctest::Approx(3.0 / 7.0).epsilon(1e-13));
    const auto [glm, gv] = grid_max_lambda0(0.1);
    CHECK(glm == doctest::Approx(0.07).epsilon(1e-5));
    CHECK(gv == doctest::Approx(3.0 / 7.0).epsilon(1e-10));
    CHECK(lambda0_max(0.0).second == 1.0);
    CHECK(lambda0_max(-0.05).second == 1.0);
    CHECK(lambda0(1e-9, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("count names") {
    CHECK(std::string(to_string(EquilibriumCount::AtLeastThree)) == "at_least_three");
  }
}
