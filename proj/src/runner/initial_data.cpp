#include "decaylab/runner/initial_data.hpp"

#include <cmath>

#include "decaylab/errors.hpp"
#include "decaylab/spectral/io.hpp"
#include "decaylab/spectral/ops.hpp"
#include "decaylab/stepper/etdrk4.hpp"

namespace decaylab::runner {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do u1 = uniform();
  while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

spectral::SpectralField random_bandlimited(const spectral::Grid& grid, int components, double kmin, double kmax,
                                           std::uint64_t seed, double slope) {
  if (!(kmin <= kmax) || kmax <= 0.0) throw ConfigError("random data needs 0 < kmax and kmin <= kmax");
  Rng rng(seed);
  spectral::SpectralField f(grid, components);
  const auto kmag = grid.k_magnitude();
  const auto mask = grid.dealias_mask();
  for (int c = 0; c < components; ++c)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double re = rng.normal(), im = rng.normal();
      const double k = kmag[i];
      if (k == 0.0 || k < kmin || k > kmax || mask[i] == 0.0) continue;
      f.at(c, i) = std::pow(k, slope) * spectral::cplx(re, im);
    }
  f.enforce_hermitian();
  return f;
}

spectral::SpectralField single_mode(const spectral::Grid& grid, int components, const std::vector<int>& k,
                                    double amplitude, int component, const std::string& phase) {
  if (static_cast<int>(k.size()) != grid.dim()) throw ConfigError("single_mode wavevector has the wrong length");
  if (component < 0 || component >= components) throw ConfigError("single_mode component out of range");
  spectral::SpectralField f(grid, components);
  int pos[3] = {0, 0, 0}, neg[3] = {0, 0, 0};
  bool zero = true;
  for (int a = 0; a < grid.dim(); ++a) {
    if (std::abs(k[a]) >= grid.n()[a] / 2) throw ConfigError("single_mode wavevector beyond the grid");
    pos[a] = grid.storage_index(a, k[a]);
    neg[a] = grid.storage_index(a, -k[a]);
    zero = zero && k[a] == 0;
  }
  if (zero) throw ConfigError("single_mode needs a nonzero wavevector");
  const std::size_t fp = grid.flat(std::span<const int>(pos, grid.dim()));
  const std::size_t fn = grid.flat(std::span<const int>(neg, grid.dim()));
  if (phase == "cos") {
    f.at(component, fp) = 0.5 * amplitude;
    f.at(component, fn) = 0.5 * amplitude;
  } else {
    f.at(component, fp) = spectral::cplx(0.0, -0.5 * amplitude);
    f.at(component, fn) = spectral::cplx(0.0, 0.5 * amplitude);
  }
  return f;
}

spectral::SpectralField make_initial(const InitialData& data, const spectral::Grid& grid,
                                     const models::ModelSpec& spec) {
  spectral::SpectralField f;
  if (data.profile == "single_mode") {
    f = single_mode(grid, spec.components, data.k, data.amplitude, data.component, data.phase);
  } else if (data.profile == "random_bandlimited") {
    if (!data.seed) throw ConfigError("random_bandlimited data needs a seed");
    f = random_bandlimited(grid, spec.components, data.kmin, data.kmax, *data.seed, data.slope);
  } else if (data.profile == "from_file") {
    f = spectral::read_field(data.path);
    if (f.grid() != grid) throw GridMismatch("initial data file uses a different grid");
    if (f.components() != spec.components) throw DimensionError("initial data file has the wrong components");
  } else {
    throw ConfigError("unknown initial profile '" + data.profile + "'");
  }
  const stepper::Etdrk4 scheme(spec, grid);
  f = scheme.admissible(f);
  if (data.profile == "random_bandlimited") {
    const double n = spectral::sobolev_norm(spectral::remove_mean(f), data.norm_space);
    if (!(n > 0.0)) throw ConfigError("random data vanished after projection; widen the band");
    f *= data.target_norm / n;
  }
  if (data.mean != 0.0) {
    if (spec.projector != models::Projector::none)
      throw ConfigError("a mean is only allowed for models without a mean-removing projector");
    f.at(0, 0) += data.mean;
  }
  return f;
}

}  // namespace decaylab::runner
