#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "decaylab/runner/initial_data.hpp"
#include "decaylab/spectral/field.hpp"
#include "decaylab/spectral/ops.hpp"

namespace testing {

using decaylab::spectral::Grid;
using decaylab::spectral::SpectralField;
using decaylab::spectral::cplx;
inline constexpr double kPi = std::numbers::pi;

// Dealiased Hermitian random field with normal coefficients on every kept
// mode up to kmax (physical wavenumber), mean zero.
inline SpectralField random_field(const Grid& g, int components, std::uint64_t seed, double kmax = 1e9,
                                  double slope = 0.0) {
  return decaylab::runner::random_bandlimited(g, components, 1e-12, kmax, seed, slope);
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

inline double rel_l2(const SpectralField& a, const SpectralField& ref) {
  const double r = decaylab::spectral::l2_norm(ref);
  return decaylab::spectral::l2_norm(a - ref) / (r > 0 ? r : 1.0);
}

// Single Fourier mode amplitude*cos(k.x) (or sin) on a 2 pi periodic grid.
inline SpectralField mode(const Grid& g, std::vector<int> k, double amplitude = 1.0, bool sine = false, int comps = 1,
                          int comp = 0) {
  return decaylab::runner::single_mode(g, comps, k, amplitude, comp, sine ? "sin" : "cos");
}

}  // namespace testing
