#include <doctest.h>

#include "common.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/oracles/oracles.hpp"

using namespace decaylab;
using spectral::Grid;
using spectral::PhysicalField;
using testing::mode;

namespace {

PhysicalField smooth_data(const Grid& g, double amp) {
  return spectral::sample(g, 1, [amp](int, const std::array<double, 3>& x) {
    return amp * (std::sin(x[0]) + 0.4 * std::cos(2 * x[0] + 0.3) - 0.25 * std::sin(3 * x[0] - 1.0));
  });
}

PhysicalField reflect(const PhysicalField& f, double sign) {
  PhysicalField r = f;
  const std::size_t n = f.values.size();
  for (std::size_t j = 0; j < n; ++j) r.values[j] = sign * f.values[(n - j) % n];
  return r;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("heat oracle is bit-identical to the semigroup") {
    const Grid grids[] = {Grid::cube(1, 64), Grid::cube(2, 16), Grid({8, 8, 16}, {2.0, 3.0, 7.0})};
    int count = 0;
    for (int i = 0; i < 100; ++i) {
      const Grid& g = grids[i % 3];
      const auto f = testing::random_field(g, 1 + i % 2, 300 + i);
      const double theta = 0.25 + 0.05 * (i % 20), t = 1e-3 * (1 + i);
      const auto a = oracles::heat_oracle(f, theta, t);
      const auto b = spectral::semigroup_apply(f, theta, t);
      bool same = true;
      for (std::size_t k = 0; k < a.coeffs().size(); ++k) same = same && a.coeffs()[k] == b.coeffs()[k];
      count += same;
    }
    CHECK(count == 100);
  }

  TEST_CASE("heat oracle examples") {
    const Grid g = Grid::cube(1, 32);
    const auto f = testing::random_field(g, 1, 2);
    CHECK(testing::max_abs_diff(oracles::heat_oracle(f, 1.0, 0.0), f) == 0.0);
    CHECK(testing::max_abs_diff(oracles::heat_oracle(mode(g, {3}), 1.0, 0.1), mode(g, {3}, std::exp(-0.9))) < 1e-16);
    CHECK_THROWS_AS(oracles::heat_oracle(f, 1.0, -0.1), DomainError);
  }

  TEST_CASE("Cole-Hopf: zero data stays zero") {
    const Grid g = Grid::cube(1, 64);
    for (double t : {0.1, 1.0, 10.0}) {
      const auto u = oracles::cole_hopf(PhysicalField{g, 1, std::vector<double>(64, 0.0)}, t);
      for (double v : u.values) CHECK(v == 0.0);
    }
  }

  TEST_CASE("Cole-Hopf: reflection symmetry") {
    const Grid g = Grid::cube(1, 128);
    const auto u0 = smooth_data(g, 0.5);
    const auto lhs = oracles::cole_hopf(reflect(u0, -1.0), 0.3);
    const auto rhs = reflect(oracles::cole_hopf(u0, 0.3), -1.0);
    for (std::size_t j = 0; j < lhs.values.size(); ++j) CHECK(std::abs(lhs.values[j] - rhs.values[j]) <= 1e-12);
  }

  TEST_CASE("Cole-Hopf: PDE residual") {
    const Grid g = Grid::cube(1, 128);
    const auto u0 = smooth_data(g, 0.5);
    const double t = 0.2, dt = 1e-5;
    const auto up = spectral::to_spectral(oracles::cole_hopf(u0, t + dt));
    const auto um = spectral::to_spectral(oracles::cole_hopf(u0, t - dt));
    const auto u = spectral::to_spectral(oracles::cole_hopf(u0, t));
    const auto ut = (1.0 / (2 * dt)) * (up - um);
    const auto sq = spectral::apply_multiplier(spectral::dealias_product(u, u), spectral::symbols::dx(0));
    const auto uxx = (-1.0) * spectral::fractional_laplacian(u, 1.0);
    const auto res = ut + sq - uxx;
    CHECK(spectral::l2_norm(res) <= 1e-6 * spectral::l2_norm(uxx));
  }

  TEST_CASE("Cole-Hopf: departure from the heat flow is quadratic in the amplitude") {
    const Grid g = Grid::cube(1, 64);
    double ratio[2];
    int i = 0;
    for (double a : {1e-2, 1e-3}) {
      const auto u0 = smooth_data(g, a);
      const auto ch = spectral::to_spectral(oracles::cole_hopf(u0, 0.5));
      const auto heat = spectral::semigroup_apply(spectral::to_spectral(u0), 1.0, 0.5);
      ratio[i++] = spectral::l2_norm(ch - heat) / (a * a);
    }
    CHECK(ratio[1] == doctest::Approx(ratio[0]).epsilon(0.05));
  }

  TEST_CASE("Cole-Hopf: preconditions") {
    const Grid g = Grid::cube(1, 32);
    auto u0 = smooth_data(g, 0.5);
    for (double& v : u0.values) v += 0.1;
    CHECK_THROWS_AS(oracles::cole_hopf(u0, 0.1), DomainError);
    CHECK_THROWS_AS(oracles::cole_hopf(PhysicalField{Grid::cube(2, 8), 1, std::vector<double>(64, 0.0)}, 0.1),
                    DimensionError);
  }
}
