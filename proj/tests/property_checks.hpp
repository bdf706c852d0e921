#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "common.hpp"

namespace testing {

// Violations of the interpolation inequality over `samples` seeded fields in
// d = 1, 2, 3 with (s1, s2, lambda) drawn from [-1, 3]^2 x [0, 1].
inline int interpolation_violations(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> s_dist(-1.0, 3.0), l_dist(0.0, 1.0), slope(-3.0, 1.0);
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    const int d = 1 + i % 3;
    const Grid g = Grid::cube(d, d == 3 ? 8 : 16);
    double s1 = s_dist(rng), s2 = s_dist(rng);
    if (s1 > s2) std::swap(s1, s2);
    if (s1 == s2) s2 += 0.5;
    const auto f = random_field(g, 1, rng(), 1e9, slope(rng));
    if (!decaylab::spectral::interpolation_check(f, s1, s2, l_dist(rng)).holds()) ++violations;
  }
  return violations;
}

// Largest |fg|_{t1+t2-d/2} / (|f|_{t1} |g|_{t2}) for (t1, t2) = (0.4, 0.4)
// over seeded mean-zero fields band-limited to kmax <= n/6, so the product is
// not truncated. Returns +inf if any ratio is not finite.
inline double product_ratio(int d, int n, double kmax, int samples, std::uint64_t seed) {
  using namespace decaylab::spectral;
  const Grid g = Grid::cube(d, n);
  const double t1 = 0.4, t2 = 0.4, s = t1 + t2 - 0.5 * d;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> slope(-2.0, 0.5);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto f = random_field(g, 1, rng(), kmax, slope(rng));
    const auto h = random_field(g, 1, rng(), kmax, slope(rng));
    const double ratio =
        sobolev_norm(remove_mean(dealias_product(f, h)), s) / (sobolev_norm(f, t1) * sobolev_norm(h, t2));
    if (!std::isfinite(ratio)) return INFINITY;
    worst = std::max(worst, ratio);
  }
  return worst;
}

}  // namespace testing
