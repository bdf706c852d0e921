#include <algorithm>
#include <cmath>

#include "decaylab/errors.hpp"
#include "decaylab/oracles/oracles.hpp"
#include "decaylab/spectral/fft.hpp"

namespace decaylab::oracles {

spectral::PhysicalField cole_hopf(const spectral::PhysicalField& u0, double t, int refine) {
  using spectral::cplx;
  const spectral::Grid& g = u0.grid;
  if (g.dim() != 1 || u0.components != 1) throw DimensionError("Cole-Hopf oracle is one-dimensional and scalar");
  if (!(t >= 0.0)) throw DomainError("Cole-Hopf oracle needs t >= 0");
  if (refine < 1) throw DomainError("refinement factor must be positive");
  const int n = g.n()[0];
  const double L = g.l()[0];
  if (static_cast<int>(u0.values.size()) != n) throw DimensionError("sample count does not match the grid");

  std::vector<cplx> c(u0.values.begin(), u0.values.end());
  spectral::fft::forward(g, c.data());
  double scale = 0.0;
  for (double v : u0.values) scale = std::max(scale, std::fabs(v));
  if (std::abs(c[0]) / n > 1e-12 * std::max(scale, 1e-300) && std::abs(c[0]) / n > 1e-300)
    throw DomainError("Cole-Hopf oracle needs zero-mean data");

  // Potential P with P' = u0, zero-padded onto the fine grid.
  const int nf = refine * n;
  const spectral::Grid fine({nf}, {L});
  std::vector<cplx> p(nf, cplx{});
  for (int m = 1; m < n / 2; ++m) {
    const double k = 2.0 * std::numbers::pi * m / L;
    p[m] = c[m] / (cplx(0.0, k) * static_cast<double>(n));
    p[nf - m] = c[n - m] / (cplx(0.0, -k) * static_cast<double>(n));
  }
  spectral::fft::backward(fine, p.data());

  double pmin = INFINITY;
  for (const cplx& z : p) pmin = std::min(pmin, z.real());
  std::vector<cplx> phi(nf);
  for (int j = 0; j < nf; ++j) phi[j] = std::exp(-(p[j].real() - pmin));

  spectral::fft::forward(fine, phi.data());
  std::vector<cplx> dphi(nf);
  for (int m = 0; m < nf; ++m) {
    const int s = m < nf / 2 ? m : m - nf;
    const double k = 2.0 * std::numbers::pi * s / L;
    const double decay = std::exp(-t * k * k) / nf;
    phi[m] *= decay;
    dphi[m] = (m == nf / 2) ? cplx{} : phi[m] * cplx(0.0, k);
  }
  spectral::fft::backward(fine, phi.data());
  spectral::fft::backward(fine, dphi.data());

  spectral::PhysicalField out{g, 1, std::vector<double>(n)};
  for (int j = 0; j < n; ++j) out.values[j] = -dphi[j * refine].real() / phi[j * refine].real();
  return out;
}

}  // namespace decaylab::oracles
