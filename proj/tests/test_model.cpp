#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "glacier/errors.hpp"
#include "glacier/model.hpp"
#include "glacier/params.hpp"

using namespace glacier;

namespace {

template <class Fn>
double richardson(Fn&& fn, double x, double h) {
  auto c = [&](double s) { return (fn(x + s) - fn(x - s)) / (2 * s); };
  return c(h / 2) + (c(h / 2) - c(h)) / 3.0;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("continental albedo") {
    const ModelParams p;
    CHECK(continental_albedo(p, 0.0) == 0.25);
    CHECK(continental_albedo(p, 0.125) == doctest::Approx(0.75));
    CHECK(continental_albedo(p, 0.1875) == doctest::Approx(1.0));
  }

  TEST_CASE("ice profile") {
    CHECK(ice_profile_height(5e5, 5e5, 2.1) == 0.0);
    CHECK(ice_profile_height(-5e5, 5e5, 2.1) == 0.0);
    CHECK(ice_profile_height(0.0, 1e6, 2.1) == doctest::Approx(2100.0));
    CHECK_THROWS_AS(ice_profile_height(1.1e6, 1e6, 2.1), OutOfProfile);
    CHECK(ice_height_scale(0.3e5, 920.0, 9.81) == doctest::Approx(2.105).epsilon(5e-4));
  }

  TEST_CASE("snow-line position") {
    CHECK(lambda0(0.07, 0.1) == doctest::Approx(0.42857142857142855).epsilon(1e-13));
    CHECK(lambda0(0.07, 0.1) == doctest::Approx((1 - 0.4) / (1 + 0.4)).epsilon(1e-13));
    CHECK(std::abs(lambda0(0.0944758, 0.02) - 2.0 / 3.0) <= 1e-6);
    CHECK(lambda0(2.0, 0.1) == doctest::Approx(-0.2571673192692896).epsilon(1e-12));
    CHECK_THROWS_AS(lambda0(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(lambda0(0.01, -0.5), ComplexSnowline);
  }

  TEST_CASE("nondimensional scales") {
    const auto [m, sc] = nondimensionalize(PhysicalParams{});
    CHECK(sc.T_star == doctest::Approx(195.55).epsilon(5e-5));
    CHECK(m.beta == doctest::Approx(0.7875).epsilon(1e-3));
    CHECK(m.beta == doctest::Approx(0.7875385745775165).epsilon(1e-14));
    CHECK(m.epsilon == doctest::Approx(0.1088).epsilon(5e-3));
    CHECK(sc.L_star == doctest::Approx(2.75625e7).epsilon(1e-12));
    CHECK(sc.t_star_years == doctest::Approx(33.2e3).epsilon(1e-2));
    CHECK(ablation_rate_for_time_scale(33.2e3, 2.1, 0.4e-3) == doctest::Approx(0.498).epsilon(1e-3));
  }

  TEST_CASE("bad physical inputs name the symbol") {
    PhysicalParams p;
    p.B = -1.0;
    try {
      nondimensionalize(p);
      FAIL("expected ScaleError");
    } catch (const ScaleError& e) {
      CHECK(e.symbol() == "B");
    }
  }

  TEST_CASE("dimensional round trip") {
    const auto sc = nondimensionalize(PhysicalParams{}).second;
    const DimensionalState d = to_dimensional(State{1.0, 0.1}, sc);
    CHECK(d.T_kelvin == doctest::Approx(sc.T_star));
    CHECK(d.l_meters == doctest::Approx(2.75625e6));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const State s{u(rng), 0.25 * u(rng)};
      const State r = from_dimensional(to_dimensional(s, sc), sc);
      CHECK(std::abs(r.theta - s.theta) <= 1e-14 * std::abs(s.theta));
      CHECK(std::abs(r.lambda - s.lambda) <= 1e-14 * std::abs(s.lambda));
      const double tau = u(rng);
      CHECK(from_dimensional_time(to_dimensional_time(tau, sc), sc) == doctest::Approx(tau).epsilon(1e-14));
    }
  }

  TEST_CASE("vector field examples") {
    ModelParams p = fixtures::table1();
    const Derivative top = vector_field(p, 1.0, State{1.3, 0.25});
    CHECK(top.dlambda == doctest::Approx(-0.5));
    CHECK(vector_field(p, 1.0, State{1.4, 0.05}).dtheta == doctest::Approx(-0.1324614254224834).epsilon(1e-12));
    p.beta = 0.79;
    CHECK(vector_field(p, 1.0, State{1.4, 0.05}).dtheta == doctest::Approx(-0.13).epsilon(1e-12));
    CHECK(vector_field(p, 2.5, State{1.4, 0.05}).dtheta == doctest::Approx(-0.325).epsilon(1e-12));
    CHECK_THROWS_AS(vector_field(p, 1.0, State{1.4, 0.0}), DomainError);
  }

  TEST_CASE("full model regimes") {
    ModelParams p = fixtures::table1();
    p.epsilon = 0.1;
    const FullDerivative stag = vector_field_full(p, 1.0, State{1.4, 2.0});
    CHECK(stag.regime == Regime::Stagnant);
    CHECK(stag.dlambda == doctest::Approx(-std::sqrt(2.0)));
    p.epsilon = -0.1;
    const FullDerivative nuc = vector_field_full(p, 1.0, State{1.43, 0.01});
    CHECK(nuc.regime == Regime::Nucleation);
    CHECK(nuc.dlambda == doctest::Approx(0.5 * p.accum(1.43)));
    CHECK(nuc.dtheta == vector_field(p, 1.0, State{1.43, 0.01}).dtheta);
    p.epsilon = 0.05;
    const FullDerivative acc = vector_field_full(p, 1.0, State{1.43, 0.05});
    CHECK(acc.regime == Regime::Accumulating);
    CHECK(acc.dlambda ==
          doctest::Approx(std::sqrt(0.05) * ((1 + p.accum(1.43)) * lambda0(0.05, 0.05) - 1.0)));
    CHECK_THROWS_AS(vector_field_full(p, 1.0, State{1.43, -1.0}), DomainError);
  }

  TEST_CASE("full model approaches the simplified one as epsilon vanishes") {
    ModelParams p = fixtures::table1();
    p.epsilon = 1e-6;
    for (double th = 1.3; th <= 1.5; th += 0.01) {
      for (double l = 1e-3; l <= 5e-3; l += 5e-4) {
        const double full = vector_field_full(p, 1.0, State{th, l}).dlambda;
        const double simp = vector_field(p, 1.0, State{th, l}).dlambda;
        CHECK(std::abs(full - simp) <= 1e-4);
      }
    }
  }

  TEST_CASE("expansion remainder at zero epsilon") {
    const ModelParams p = fixtures::table1();
    for (double th = 1.3; th <= 1.5; th += 0.02) {
      const double xi = p.accum(th);
      for (double l = 1e-4; l <= 0.05; l += 1e-4) {
        const FullDerivative full = vector_field_full(p, 1.0, State{th, l});
        CHECK(full.regime == Regime::Accumulating);
        const double simp = vector_field(p, 1.0, State{th, l}).dlambda;
        const double bound = std::sqrt(l) * (1 + xi) * 5.0 * std::pow(2.0 * l, 3) / l;
        CHECK(std::abs(full.dlambda - simp) <= bound);
      }
    }
  }

  TEST_CASE("nullcline examples") {
    ModelParams p = fixtures::table1();
    CHECK(nullcline_f(p, 1.4) == doctest::Approx(-0.06038452118540283).epsilon(1e-12));
    p.beta = 0.79;
    CHECK(nullcline_f(p, 1.4) == doctest::Approx(-0.058333333333333).epsilon(1e-10));
    CHECK(nullcline_f(p, 0.5, 1) == doctest::Approx(-1.0 / 1.2).epsilon(1e-12));
    CHECK(std::abs(nullcline_f(p, 1.4, 2)) <= 1e-12);
    CHECK(nullcline_g(p, 50.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(nullcline_g(p, -50.0) == doctest::Approx(0.1 / 4.4).epsilon(1e-12));
    for (double th = 1.3; th <= 1.6; th += 1e-3) CHECK(nullcline_g(p, th, 1) >= 0.0);
  }

  TEST_CASE("nullcline derivatives against differences") {
    const ModelParams base = fixtures::table1();
    for (auto fam : {SigmoidFamily::Tanh, SigmoidFamily::Logistic, SigmoidFamily::Erf}) {
      ModelParams p = base;
      p.albedo.family = fam;
      p.accum.family = fam;
      for (double th = 1.35; th <= 1.47; th += 7.3e-4) {
        for (int k = 1; k <= 3; ++k) {
          const double ef = nullcline_f(p, th, k);
          const double df = richardson([&](double x) { return nullcline_f(p, x, k - 1); }, th, 1e-5);
          CHECK(std::abs(ef - df) <= 1e-5 * std::abs(ef) + 1e-7);
          const double eg = nullcline_g(p, th, k);
          const double dg = richardson([&](double x) { return nullcline_g(p, x, k - 1); }, th, 1e-6);
          CHECK(std::abs(eg - dg) <= 1e-5 * std::abs(eg) + 1e-7);
        }
      }
    }
  }

  TEST_CASE("nullclines zero the corresponding component") {
    const ModelParams p = fixtures::table1();
    for (double th = 1.0; th <= 1.6; th += 1e-3) {
      const double lg = nullcline_g(p, th);
      CHECK(std::abs(vector_field(p, 1.0, State{th, lg}).dlambda) <= 1e-12);
      const double lf = nullcline_f(p, th);
      if (lf > 0.0) CHECK(std::abs(vector_field(p, 1.0, State{th, lf}).dtheta) <= 1e-12);
    }
  }

  TEST_CASE("regime names") {
    CHECK(to_string(Regime::Stagnant) == "stagnant");
    CHECK(to_string(Regime::Nucleation) == "nucleation");
    CHECK(to_string(Regime::Accumulating) == "accumulating");
  }
}
