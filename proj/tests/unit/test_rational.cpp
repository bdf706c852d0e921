#include <doctest.h>

#include "decaylab/errors.hpp"
#include "decaylab/rational.hpp"

using decaylab::Rational;

TEST_SUITE("rational") {
  TEST_CASE("lowest terms and sign normalization") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(-3, 2).str() == "-3/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS(Rational(1, 0));
  }

  TEST_CASE("arithmetic and ordering") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(2, 3) > Rational(5, 8));
    CHECK(decaylab::max(Rational(1, 2), Rational(3, 8)) == Rational(1, 2));
    CHECK(decaylab::min(Rational(1, 2), Rational(3, 8)) == Rational(3, 8));
    const Rational big(3037000499LL, 3037000493LL);
    CHECK((big * big) / big == big);
  }

  TEST_CASE("parsing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-2") == Rational(-2));
    CHECK(Rational::parse("0.6") == Rational(3, 5));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("2e-1") == Rational(1, 5));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/0"));
  }

  TEST_CASE("continued-fraction approximation") {
    CHECK(Rational::approximate(0.75) == Rational(3, 4));
    CHECK(Rational::approximate(2.0 / 3.0) == Rational(2, 3));
    CHECK(Rational::approximate(-0.125) == Rational(-1, 8));
    const Rational pi = Rational::approximate(3.141592653589793, 1000);
    CHECK(pi == Rational(355, 113));
  }
}
