#include <doctest.h>

#include <cmath>

#include "property_checks.hpp"

using namespace decaylab;
using namespace decaylab::spectral;
using testing::product_ratio;

TEST_SUITE("properties") {
  TEST_CASE("interpolation inequality on 1000 random fields") {
    const int violations = testing::interpolation_violations(1000, 7);
    CHECK(violations == 0);
  }

  TEST_CASE("interpolation equality cases") {
    const Grid g = Grid::cube(1, 32);
    const auto single = testing::mode(g, {3});
    const auto eq = interpolation_check(single, -0.5, 2.0, 0.3);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-14));
    const auto two = testing::mode(g, {1}) + testing::mode(g, {4});
    const auto c = interpolation_check(two, 0.0, 1.0, 0.5);
    CHECK(c.holds());
    CHECK(c.lhs < c.rhs);
    // lhs^2 = pi (1 + 4), rhs^2 = sqrt(pi (1 + 1)) sqrt(pi (1 + 16)).
    CHECK(c.lhs == doctest::Approx(std::sqrt(5.0 * testing::kPi)).epsilon(1e-13));
    CHECK(c.rhs == doctest::Approx(std::sqrt(testing::kPi * std::sqrt(34.0))).epsilon(1e-13));
    const auto zero = interpolation_check(two, 0.5, 2.0, 0.0);
    CHECK(zero.lhs == doctest::Approx(sobolev_norm(two, 0.5)).epsilon(1e-15));
    CHECK(zero.rhs == doctest::Approx(zero.lhs).epsilon(1e-15));
  }

  TEST_CASE("product inequality ratio stays bounded, d = 1") {
    const double narrow = product_ratio(1, 64, 6.0, 250, 101);
    const double wide = product_ratio(1, 128, 20.0, 250, 202);
    MESSAGE("d = 1 sup ratio: band 6 " << narrow << ", band 20 " << wide);
    CHECK(narrow > 0.0);
    CHECK(wide < 2.0 * narrow);
  }

  TEST_CASE("product inequality ratio stays bounded, d = 2") {
    const double narrow = product_ratio(2, 32, 5.0, 250, 303);
    const double wide = product_ratio(2, 64, 10.0, 250, 404);
    MESSAGE("d = 2 sup ratio: band 5 " << narrow << ", band 10 " << wide);
    CHECK(narrow > 0.0);
    CHECK(wide < 2.0 * narrow);
  }
}
