#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace decaylab {

// Exact rational with 64-bit parts, always in lowest terms with den > 0.
// Homogeneity degrees, the critical index and the dissipation order are kept
// in this form so the admissibility tables compare exactly.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "p/q", integers and finite decimals ("0.6", "-1.25", "2e-1").
  static Rational parse(std::string_view text);
  // Best approximation with denominator <= max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den = 1000000);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(Rational b) { return *this = *this + b; }
  Rational& operator-=(Rational b) { return *this = *this - b; }
  Rational& operator*=(Rational b) { return *this = *this * b; }
  Rational& operator/=(Rational b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational max(Rational a, Rational b);
Rational min(Rational a, Rational b);

}  // namespace decaylab
