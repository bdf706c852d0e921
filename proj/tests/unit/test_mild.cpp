#include <doctest.h>

#include <memory>

#include "common.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/models/admissibility.hpp"
#include "decaylab/mild/picard.hpp"
#include "decaylab/stepper/integrate.hpp"

using namespace decaylab;
using namespace decaylab::mild;
using spectral::Grid;
using testing::kPi;
using testing::mode;

namespace {

SpectralField scaled_random(const Grid& g, int comps, std::uint64_t seed, double norm, double s, double kmax = 8.0) {
  auto u = testing::random_field(g, comps, seed, kmax);
  u *= norm / spectral::sobolev_norm(u, s);
  return u;
}

double gamma_of(const ModelSpec& spec) {
  const auto ex = models::admissible_exponents(spec);
  return std::get<models::ExponentWitness>(ex).gamma.to_double();
}

}  // namespace

TEST_SUITE("mild") {
  TEST_CASE("mesh shape") {
    const auto m = make_mesh(0.1, 64);
    REQUIRE(m.size() == 65);
    CHECK(m.front() == 0.0);
    CHECK(m.back() == doctest::Approx(0.1));
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] > m[i - 1]);
    CHECK(m[1] < 1e-4 * m.back());
  }

  TEST_CASE("V-norm examples") {
    const Grid g = Grid::cube(1, 16);
    Trajectory c;
    c.times = make_mesh(1.0, 8, 2);
    c.fields.assign(c.times.size(), mode(g, {1}));
    c.gamma = 1.0;
    c.beta_c = 0.0;
    c.theta = 1.0;
    CHECK(v_norm(c) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    Trajectory z = c;
    for (auto& f : z.fields) f = SpectralField(g, 1);
    CHECK(v_norm(z) == 0.0);

    const auto u0 = scaled_random(Grid::cube(1, 64), 1, 4, 1.0, -0.5, 20.0);
    const auto s = semigroup_trajectory(u0, make_mesh(1.0, 64), 1.0, -0.125, -0.5);
    const double v = v_norm(s);
    CHECK(std::isfinite(v));
    CHECK(v >= 1.0 - 1e-12);
    MESSAGE("measured semigroup constant " << v / 1.0);
  }

  TEST_CASE("M(T) decreases as T shrinks") {
    const Grid g = Grid::cube(1, 128);
    // Broadband with most of the critical norm at low modes, so the sup sits at
    // moderate t.
    auto u0 = testing::random_field(g, 1, 6, 40.0, -1.5);
    u0 *= 1.0 / spectral::sobolev_norm(u0, -0.5);
    double prev = INFINITY;
    for (double T : {1.0, 0.1, 0.01}) {
      const double m = v_norm_gamma_part(semigroup_trajectory(u0, make_mesh(T, 64), 1.0, -0.125, -0.5));
      CHECK(m < prev);
      prev = m;
    }
  }

  TEST_CASE("Duhamel integral of a vanishing nonlinearity is zero") {
    const auto spec = models::make_model("linear1d");
    const Grid g = Grid::cube(1, 32);
    const auto s = semigroup_trajectory(testing::random_field(g, 1, 1), make_mesh(0.5, 16, 4), 1.0, 0.5, 0.0);
    const auto d = duhamel_apply(s, s, spec);
    for (const auto& f : d.fields) CHECK(f.max_abs() == 0.0);
  }

  TEST_CASE("frozen forcing matches the closed-form per-mode integral") {
    const Grid g = Grid::cube(1, 32);
    const auto forcing_field = testing::random_field(g, 1, 2, 10.0);
    const auto s = semigroup_trajectory(SpectralField(g, 1), make_mesh(0.5, 32), 0.75, 0.5, 0.0);
    const Forcing frozen = [&](const SpectralField&, const SpectralField&) { return forcing_field; };
    const auto d = duhamel_apply(s, s, frozen);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const double t = s.times[i];
      for (std::size_t k = 1; k < g.size(); ++k) {
        const double lam = std::pow(g.k_magnitude()[k], 1.5);
        const auto want = forcing_field.at(0, k) * (-std::expm1(-t * lam) / lam);
        worst = std::max(worst, std::abs(d.fields[i].at(0, k) - want) / (std::abs(forcing_field.at(0, k)) + 1e-300));
      }
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("quadrature refinement converges at second order or better") {
    const auto spec = models::make_model("burgers");
    const Grid g = Grid::cube(1, 32);
    const auto u0 = scaled_random(g, 1, 3, 0.3, -0.5, 6.0);
    const double gamma = gamma_of(spec);
    auto trajectory = [&](int M) {
      const auto mesh = make_mesh(0.2, M, 0);
      stepper::Observers obs;
      std::vector<SpectralField> states;
      obs.on_observation = [&](const stepper::RunState& st) { states.push_back(st.field); };
      stepper::integrate(stepper::RunState{std::make_shared<const ModelSpec>(spec), u0, 0.0, 1e-3, 0}, 0.2,
                         stepper::DtPolicy::fixed(1e-3), mesh, obs);
      Trajectory u;
      u.times = mesh;
      u.fields = states;
      u.gamma = gamma;
      u.beta_c = -0.5;
      u.theta = 1.0;
      return u;
    };

    SUBCASE("quadrature nodes on a fixed trajectory") {
      const auto u = trajectory(16);
      auto with = [&](int gauss, int panels) {
        QuadratureOptions q;
        q.gauss_points = gauss;
        q.min_subpanels = panels;
        return duhamel_apply(u, u, spec, q).fields.back();
      };
      const auto ref = with(8, 64);
      const double e1 = testing::rel_l2(with(2, 4), ref), e2 = testing::rel_l2(with(2, 8), ref),
                   e3 = testing::rel_l2(with(2, 16), ref);
      MESSAGE("quadrature errors " << e1 << " " << e2 << " " << e3);
      CHECK(std::log2(e1 / e2) >= 2.0);
      CHECK(std::log2(e2 / e3) >= 2.0);
    }

    SUBCASE("trajectory mesh") {
      // Successive differences; the interpolant between mesh points is second
      // order, approached from below.
      auto at_T = [&](int M) {
        const auto u = trajectory(M);
        return duhamel_apply(u, u, spec).fields.back();
      };
      const auto a = at_T(128), b = at_T(256), c = at_T(512), d = at_T(1024);
      const double d1 = spectral::l2_norm(a - b), d2 = spectral::l2_norm(b - c), d3 = spectral::l2_norm(c - d);
      MESSAGE("mesh differences " << d1 << " " << d2 << " " << d3);
      CHECK(std::log2(d1 / d2) >= 1.95);
      CHECK(std::log2(d2 / d3) >= 1.95);
    }
  }

  TEST_CASE("Picard: vanishing nonlinearity converges in one iteration") {
    const auto spec = models::make_model("linear1d");
    const auto u0 = testing::random_field(Grid::cube(1, 32), 1, 7);
    const auto r = picard_solve(u0, spec, 0.1, gamma_of(spec));
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 1);
    CHECK(testing::rel_l2(r.trajectory.fields.back(), spectral::semigroup_apply(u0, 1.0, 0.1)) < 1e-14);
  }

  TEST_CASE("Picard: small Burgers data contracts and matches the stepper") {
    const auto spec = models::make_model("burgers");
    const Grid g = Grid::cube(1, 64);
    const auto u0 = scaled_random(g, 1, 11, 1e-2, -0.5);
    const auto r = picard_solve(u0, spec, 0.1, gamma_of(spec));
    REQUIRE(r.report.converged);
    for (double q : r.report.ratios) CHECK(q < 0.5);
    CHECK(r.report.bound_ok);
    CHECK(r.report.final_v_norm <= 2 * r.report.u0_norm * 1.01);
    const auto st = stepper::integrate(stepper::RunState{std::make_shared<const ModelSpec>(spec), u0, 0.0, 1e-3, 0},
                                       0.1, stepper::DtPolicy::fixed(1e-3), {});
    CHECK(testing::rel_l2(r.trajectory.fields.back(), st.final_state.field) <= 1e-4);
    const auto j = r.report.to_json();
    CHECK(j.contains("deltas"));
    CHECK(j.contains("bilinear_constant"));
  }

  TEST_CASE("Picard: large data yields a divergence report") {
    const auto spec = models::make_model("burgers");
    const auto u0 = scaled_random(Grid::cube(1, 64), 1, 11, 200.0, -0.5);
    PicardResult r;
    CHECK_NOTHROW(r = picard_solve(u0, spec, 1.0, gamma_of(spec)));
    CHECK(r.report.diverged);
    CHECK(!r.report.converged);
    CHECK(r.report.bilinear_constant > 0.0);
  }

  TEST_CASE("Picard preconditions") {
    const auto spec = models::make_model("burgers");
    const auto u0 = scaled_random(Grid::cube(1, 32), 1, 1, 1e-2, -0.5);
    CHECK_THROWS_AS(picard_solve(u0, spec, 0.1, -0.5), DomainError);
    CHECK_THROWS_AS(picard_solve(u0, spec, 0.1, 1.5), DomainError);
    CHECK_THROWS_AS(picard_solve(u0, spec, 0.0, -0.125), DomainError);
  }

  TEST_CASE("bilinear Duhamel ratio stays bounded over random small trajectories") {
    const auto spec = models::make_model("burgers");
    const Grid g = Grid::cube(1, 32);
    const auto mesh = make_mesh(0.1, 16, 4);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto u = semigroup_trajectory(scaled_random(g, 1, 500 + seed, 1e-2, -0.5), mesh, 1.0, -0.125, -0.5);
      const auto v = semigroup_trajectory(scaled_random(g, 1, 900 + seed, 1e-2, -0.5), mesh, 1.0, -0.125, -0.5);
      const double r = v_norm(duhamel_apply(u, v, spec)) / (v_norm(u) * v_norm(v));
      CHECK(std::isfinite(r));
      worst = std::max(worst, r);
    }
    MESSAGE("measured bilinear constant " << worst);
    CHECK(worst < 1e3);
  }

  TEST_CASE("small-data bound below the contraction threshold") {
    const auto spec = models::make_model("burgers");
    const Grid g = Grid::cube(1, 32);
    auto shape = scaled_random(g, 1, 13, 1.0, -0.5);
    PicardOptions po;
    po.mesh_points = 32;
    const double eps = contraction_threshold(shape, spec, 0.1, -0.125, 1e-3, 1e3, 10, po);
    MESSAGE("empirical smallness threshold " << eps);
    REQUIRE(eps > 1e-3);
    shape *= 0.5 * eps;
    const auto r = picard_solve(shape, spec, 0.1, -0.125, po);
    REQUIRE(r.report.converged);
    CHECK(r.report.final_v_norm <= 2 * r.report.u0_norm * (1 + 1e-2));
  }
}
