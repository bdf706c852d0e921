#include "decaylab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "decaylab/errors.hpp"

namespace decaylab {
namespace {

using i128 = __int128;

Rational from_wide(i128 n, i128 d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr i128 lim = INT64_MAX;
  if (n > lim || -n > lim || d > lim) throw DomainError("rational overflow");
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = g > 1 ? n / g : n;
  den_ = g > 1 ? d / g : d;
}

Rational operator+(Rational a, Rational b) {
  return from_wide(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
  return from_wide(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}
Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return from_wide(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = i128(a.num_) * b.den_;
  const i128 rhs = i128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational max(Rational a, Rational b) { return a < b ? b : a; }
Rational min(Rational a, Rational b) { return b < a ? b : a; }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return DomainError("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational p = parse(s.substr(0, slash));
    const Rational q = parse(s.substr(slash + 1));
    return p / q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  i128 mant = 0;
  int frac_digits = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (dot) ++frac_digits;
      any = true;
      if (mant > i128(INT64_MAX) * 1000) throw bad();
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw bad();
  int expo = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw bad();
    char* end = nullptr;
    const std::string tail = s.substr(i + 1);
    const long e = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0' || std::labs(e) > 18) throw bad();
    expo = static_cast<int>(e);
  }
  expo -= frac_digits;
  i128 num = neg ? -mant : mant, den = 1;
  for (int k = 0; k < std::abs(expo); ++k) (expo > 0 ? num : den) *= 10;
  return from_wide(num, den);
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("cannot approximate a non-finite value");
  // Continued-fraction convergents p/q.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(r);
    if (std::fabs(a_f) > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    const std::int64_t p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a_f;
    if (frac < 1e-15 || std::fabs(static_cast<double>(p1) / q1 - x) <= 1e-15 * std::fabs(x)) break;
    r = 1.0 / frac;
  }
  return Rational(p1, q1);
}

}  // namespace decaylab
