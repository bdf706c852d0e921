#include <doctest.h>

#include "common.hpp"
#include "decaylab/energy/calibrate.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/rational.hpp"

using namespace decaylab;
using namespace decaylab::energy;
using spectral::Grid;
using spectral::SpectralField;
using testing::kPi;
using testing::mode;

namespace {

std::vector<double> ones(int N) {
  std::vector<double> c(N + 1, 1.0);
  c[0] = 0.0;
  return c;
}

EnergyTrace semigroup_trace(const SpectralField& u0, double theta, int N, const std::vector<double>& times) {
  const auto w = weights_linear(N);
  EnergyTrace tr;
  for (double t : times) tr.push(t, energy_eval(spectral::semigroup_apply(u0, theta, t), t, theta, 0.0, w));
  return tr;
}

std::vector<double> log_times(double a, double b, int n) {
  std::vector<double> t{0.0};
  for (int i = 0; i < n; ++i) t.push_back(a * std::pow(b / a, i / double(n - 1)));
  return t;
}

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("linear weights") {
    const auto w = weights_linear(3);
    CHECK(w.values[0] == 1.0);
    CHECK(w.values[1] == 2.0);
    CHECK(w.values[2] == 2.0);
    CHECK(w.values[3] == doctest::Approx(4.0 / 3.0));
    const auto exact = linear_heat_recursion<Rational>(3);
    CHECK(exact[3] == Rational(4, 3));
    const auto w20 = weights_linear(20);
    for (int n = 1; n <= 20; ++n) CHECK(n * w20.values[n] == doctest::Approx(2 * w20.values[n - 1]).epsilon(1e-15));
  }

  TEST_CASE("Burgers Sobolev-level weights") {
    const auto w = weights_burgers_sobolev(4, ones(4), 1.0, 0.0);
    CHECK(w.values[0] == 1.0);
    CHECK(w.values[1] == doctest::Approx(0.75));
    CHECK(w.values[2] == doctest::Approx(9.0 / 32.0));
    const std::vector<Rational> c83(5, Rational(1));
    const auto exact = burgers_sobolev_recursion<Rational>(4, c83, Rational(1), Rational(0));
    CHECK(exact[1] == Rational(3, 4));
    CHECK(exact[2] == Rational(9, 32));
    CHECK(exact[3] == Rational(9, 128));
    try {
      weights_burgers_sobolev(4, ones(4), 1.0, 1.5);
      FAIL("expected a smallness violation");
    } catch (const SmallnessViolation& e) {
      CHECK(e.threshold == doctest::Approx(1.0));
    }
    const auto kp = kato_ponce_constants(3);
    CHECK(kp[0] == 0.0);
    CHECK(kp[1] == doctest::Approx(2.0 * std::sqrt(2.0)));
  }

  TEST_CASE("Burgers L2-level weights") {
    const auto w = weights_burgers_l2(3, ones(3), 0.0);
    CHECK(w.values[3] == doctest::Approx(0.125));
    CHECK(weights_burgers_l2(1, ones(1), 1.0).values[1] == doctest::Approx(1.0 / 32.0));
    const auto exact = burgers_l2_recursion<Rational>(3, std::vector<Rational>(4, Rational(1)), Rational(1));
    CHECK(exact[1] == Rational(1, 32));
    CHECK(w.values[0] == 1.0);
  }

  TEST_CASE("general weights") {
    CHECK(weights_general(3, ones(3), 2.0).values[3] == doctest::Approx(0.125));
    CHECK(weights_general(3, {0, 1, 2, 3}, 1.0).values[3] == doctest::Approx(1.0 / 3.0));
    CHECK(weights_general(3, ones(3), 2.0).values[0] == 1.0);
    CHECK_THROWS_AS(weights_general(3, ones(3), 0.0), DomainError);
    const auto exact = general_recursion<Rational>(3, {Rational(0), Rational(1), Rational(2), Rational(3)}, Rational(1, 2));
    CHECK(exact[3] == Rational(8, 3));
  }

  TEST_CASE("weights serialize") {
    auto w = weights_burgers_l2(5, kato_ponce_constants(5), 0.3);
    const auto back = weights_from_json(weights_to_json(w));
    CHECK(back.rule == WeightRule::burgers_l2);
    CHECK(back.values == w.values);
    CHECK(back.params.D0 == 0.3);
  }

  TEST_CASE("energy evaluation examples") {
    const Grid g = Grid::cube(1, 32);
    const auto w = weights_linear(10);
    CHECK(energy_eval(SpectralField(g, 1), 1.0, 1.0, 0.0, w).total == 0.0);
    const auto u = testing::random_field(g, 1, 3, 8.0);
    const auto e0 = energy_eval(u, 0.0, 1.0, -0.5, w);
    CHECK(e0.total == doctest::Approx(spectral::sobolev_norm2(u, -0.5)).epsilon(1e-15));
    double sum = 0.0;
    const auto e1 = energy_eval(u, 0.3, 1.0, -0.5, w);
    for (double x : e1.terms) sum += x;
    CHECK(e1.total == doctest::Approx(sum).epsilon(1e-12));
    CHECK(e1.tail == doctest::Approx(e1.terms.back() / e1.total));
    SpectralField with_mean = u;
    with_mean.at(0, 0) = 1.0;
    CHECK_THROWS_AS(energy_eval(with_mean, 0.1, 1.0, 0.0, w), DomainError);
    CHECK_THROWS_AS(energy_eval(u, -0.1, 1.0, 0.5, w), DomainError);
  }

  TEST_CASE("single mode closed form") {
    const Grid g = Grid::cube(1, 16);
    const auto w = weights_linear(40);
    for (double t : {0.0, 0.5, 2.0, 5.0}) {
      const auto e = energy_eval(spectral::semigroup_apply(mode(g, {1}), 1.0, t), t, 1.0, 0.0, w);
      double fact = 1.0;
      for (int n = 0; n <= 40; ++n) {
        if (n) fact *= n;
        CHECK(e.terms[n] == doctest::Approx(std::pow(2 * t, n) / fact * std::exp(-2 * t) * kPi).epsilon(1e-12));
      }
      CHECK(std::abs(e.total - kPi) <= 1e-8 * kPi);
    }
  }

  TEST_CASE("time offset") {
    const Grid g = Grid::cube(1, 16);
    const auto w = weights_linear(3);
    const auto e = energy_eval(mode(g, {1}), 0.5, 1.0, 0.0, w, 1.0);
    CHECK(e.total == doctest::Approx(kPi));
    const auto f = energy_eval(mode(g, {1}), 1.5, 1.0, 0.0, w, 1.0);
    CHECK(f.terms[1] == doctest::Approx(2 * 0.5 * kPi));
  }

  TEST_CASE("monotonicity report examples") {
    const std::vector<double> t{0, 1, 2, 3};
    const auto dec = monotonicity_report(t, {4, 3, 2, 1});
    CHECK(dec.monotone());
    CHECK(monotonicity_report(t, {1, 1, 1, 1}).max_relative_increase == 0.0);
    const auto up = monotonicity_report(t, {1.0, 0.9, 0.9 * (1 + 1e-3), 0.5});
    REQUIRE(!up.monotone());
    CHECK(*up.first_violation_time == 2.0);
    CHECK(up.max_relative_increase == doctest::Approx(1e-3));
  }

  TEST_CASE("decay fit examples") {
    const Grid g = Grid::cube(2, 32);
    const auto u0 = testing::random_field(g, 1, 99, 10.0);
    const auto tr = semigroup_trace(u0, 1.0, 8, log_times(1e-2, 10.0, 50));
    const auto w = weights_linear(8);
    for (int n = 1; n <= 8; ++n) CHECK(decay_fit(tr, w, n).bound_margin <= 1.0);

    const auto single = semigroup_trace(mode(Grid::cube(1, 16), {1}), 1.0, 4, log_times(1.0, 10.0, 20));
    CHECK(decay_fit(single, weights_linear(4), 1).fitted_exponent < -5.0);

    EnergyTrace flat;
    for (double t : log_times(1.0, 100.0, 10)) {
      EnergyValue v;
      v.ladder.assign(3, 2.0);
      v.terms.assign(3, 1.0);
      v.total = 3.0;
      flat.push(t, v);
    }
    CHECK(std::abs(decay_fit(flat, weights_linear(2), 2).fitted_exponent) < 1e-12);

    EnergyTrace tiny;
    for (double t : {0.0, 1.0, 2.0}) {
      EnergyValue v;
      v.ladder.assign(2, 1.0);
      tiny.push(t, v);
    }
    CHECK_THROWS_AS(decay_fit(tiny, weights_linear(1), 1), DomainError);
  }

  TEST_CASE("calibration examples") {
    const Grid g = Grid::cube(1, 32);
    const auto tr = semigroup_trace(testing::random_field(g, 1, 8, 8.0), 1.0, 6, log_times(1e-3, 10.0, 80));
    const auto cal = calibrate_weights(tr, 6);
    CHECK(cal.rule == WeightRule::empirical);
    CHECK(cal.values[0] == 1.0);
    CHECK(cal.values[1] >= 2.0 - 1e-2);
    CHECK(cal.violated_orders.empty());

    EnergyTrace zero;
    for (double t : {0.0, 0.5, 1.0}) {
      EnergyValue v;
      v.ladder.assign(3, 0.0);
      zero.push(t, v);
    }
    const auto capped = calibrate_weights(zero, 2);
    CHECK(capped.budget_capped);

    EnergyTrace bad;
    for (int i = 0; i < 5; ++i) {
      EnergyValue v;
      v.ladder = {std::sqrt(1.0 + i), 1.0};
      bad.push(i, v);
    }
    const auto flagged = calibrate_weights(bad, 1);
    CHECK(flagged.values[1] < 1e-10);
    REQUIRE(flagged.violated_orders.size() == 1);
    CHECK(flagged.violated_orders[0] == 1);
  }

  TEST_CASE("reweighting reproduces direct evaluation") {
    const Grid g = Grid::cube(1, 32);
    const auto tr = semigroup_trace(testing::random_field(g, 1, 2, 8.0), 1.0, 6, log_times(1e-2, 1.0, 10));
    const auto w = weights_burgers_l2(6, kato_ponce_constants(6), 0.1);
    const auto r = reweight(tr, w);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      double s = 0.0;
      for (int n = 0; n <= 6; ++n) s += w.values[n] * std::pow(tr.times[i], n) * std::pow(tr.values[i].ladder[n], 2);
      CHECK(r.values[i].total == doctest::Approx(s).epsilon(1e-13));
      for (double x : r.values[i].terms) CHECK(x >= 0.0);
    }
  }
}
