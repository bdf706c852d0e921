#include <cmath>
#include <numbers>

#include "decaylab/errors.hpp"
#include "decaylab/oracles/oracles.hpp"

namespace decaylab::oracles {

spectral::SpectralField heat_oracle(const spectral::SpectralField& u0, double theta, double t) {
  if (!(t >= 0.0)) throw DomainError("heat oracle needs t >= 0");
  const spectral::Grid& g = u0.grid();
  const int d = g.dim();
  const auto& n = g.n();
  const auto& l = g.l();
  std::vector<spectral::cplx> out(u0.coeffs().begin(), u0.coeffs().end());
  const std::size_t modes = g.size();
  const int n1 = d > 1 ? n[1] : 1, n2 = d > 2 ? n[2] : 1;
  std::size_t flat = 0;
  for (int i0 = 0; i0 < n[0]; ++i0)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2, ++flat) {
        const int idx[3] = {i0, i1, i2};
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const int s = idx[a] < n[a] / 2 ? idx[a] : idx[a] - n[a];
          const double ka = 2.0 * std::numbers::pi * s / l[a];
          k2 += ka * ka;
        }
        const double decay = std::exp(-t * std::pow(k2, theta));
        for (int c = 0; c < u0.components(); ++c) out[c * modes + flat] *= decay;
      }
  return spectral::SpectralField(g, u0.components(), std::move(out));
}

}  // namespace decaylab::oracles
