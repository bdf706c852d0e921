#pragma once

#include <cstdint>
#include <random>

#include "decaylab/runner/config.hpp"

namespace decaylab::runner {

// The one random source of the library: mt19937_64, with uniforms built as
// (x >> 11) * 2^-53 and normals by Box-Muller, so streams are identical on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double normal();

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Gaussian coefficients with amplitude |k|^slope on kmin <= |k| <= kmax,
// Hermitian, dealiased, mean zero.
spectral::SpectralField random_bandlimited(const spectral::Grid& grid, int components, double kmin, double kmax,
                                           std::uint64_t seed, double slope = 0.0);

// amplitude * cos(k.x) (or sin) in one component.
spectral::SpectralField single_mode(const spectral::Grid& grid, int components, const std::vector<int>& k,
                                    double amplitude, int component = 0, const std::string& phase = "cos");

// The configured data, projected and dealiased for the model, normalized,
// with the configured mean added.
spectral::SpectralField make_initial(const InitialData& data, const spectral::Grid& grid,
                                     const models::ModelSpec& spec);

}  // namespace decaylab::runner
