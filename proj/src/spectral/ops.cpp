#include "decaylab/spectral/ops.hpp"

#include <cmath>
#include <vector>

#include "decaylab/errors.hpp"
#include "decaylab/simd/kernels.hpp"
#include "decaylab/spectral/fft.hpp"

namespace decaylab::spectral {
namespace {

// |k|^{2s} with the zero mode and Nyquist modes mapped to 0.
std::vector<double> power_weights(const Grid& g, double s) {
  std::vector<double> w(g.size());
  const auto k2 = g.k_squared();
  const auto nyq = g.nyquist_mask();
  for (std::size_t f = 0; f < w.size(); ++f)
    w[f] = (k2[f] == 0.0 || nyq[f] == 0.0) ? 0.0 : std::pow(k2[f], s);
  return w;
}

SpectralField scaled_per_mode(const SpectralField& f, const std::vector<double>& w) {
  SpectralField out(f.grid(), f.components());
  const auto& kt = simd::active();
  for (int c = 0; c < f.components(); ++c)
    kt.scale_into(f.component(c).data(), w.data(), out.component(c).data(), w.size());
  return out;
}

// Backward transforms of the dealiased components of f, real parts kept.
std::vector<cplx> physical_dealiased(const SpectralField& f) {
  const std::size_t n = f.modes();
  std::vector<cplx> buf(n * f.components());
  const auto mask = f.grid().dealias_mask();
  const auto& kt = simd::active();
  for (int c = 0; c < f.components(); ++c) {
    kt.scale_into(f.component(c).data(), mask.data(), buf.data() + c * n, n);
    fft::backward(f.grid(), buf.data() + c * n);
  }
  return buf;
}

void forward_dealiased(const Grid& g, cplx* block) {
  fft::forward(g, block);
  const auto mask = g.dealias_mask();
  const std::size_t n = g.size();
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t f = 0; f < n; ++f) block[f] *= mask[f] * inv;
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const SymbolTable& z) {
  if (z.in() != f.components())
    throw DimensionError("multiplier expects " + std::to_string(z.in()) + " components, field has " +
                         std::to_string(f.components()));
  if (z.modes() != f.modes()) throw GridMismatch("symbol table built for a different grid");
  SpectralField out(f.grid(), z.out());
  z.apply(f.coeffs().data(), out.coeffs().data());
  for (int c = 0; c < out.components(); ++c) out.at(c, 0) = 0.0;
  return out;
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& z) {
  if (z.in() != f.components())
    throw DimensionError("multiplier '" + z.name() + "' expects " + std::to_string(z.in()) +
                         " components, field has " + std::to_string(f.components()));
  return apply_multiplier(f, SymbolTable(z, f.grid()));
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  if (s < 0.0 && !f.mean_zero()) throw DomainError("negative-order operator applied to a field with a mean");
  return scaled_per_mode(f, power_weights(f.grid(), s));
}

SpectralField semigroup_apply(const SpectralField& f, double theta, double t) {
  if (!(t >= 0.0)) throw DomainError("semigroup time must be nonnegative");
  if (!(theta > 0.0)) throw DomainError("dissipation order must be positive");
  const Grid& g = f.grid();
  std::vector<double> w(g.size());
  const auto k2 = g.k_squared();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-t * std::pow(k2[i], theta));
  return scaled_per_mode(f, w);
}

double sobolev_norm2(const SpectralField& f, double s) {
  if (s <= 0.0 && !f.mean_zero()) throw DomainError("nonpositive-order norm of a field with a mean");
  const auto w = power_weights(f.grid(), s);
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) acc += simd::weighted_norm2(f.component(c), w);
  return f.grid().volume() * acc;
}

double sobolev_norm(const SpectralField& f, double s) { return std::sqrt(sobolev_norm2(f, s)); }

double l2_norm(const SpectralField& f) {
  return std::sqrt(f.grid().volume() * simd::real_dot(f.coeffs(), f.coeffs()));
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  if (f.components() != g.components()) throw DimensionError("inner product of fields with different components");
  return f.grid().volume() * simd::real_dot(f.coeffs(), g.coeffs());
}

SpectralField remove_mean(const SpectralField& f) {
  SpectralField out = f;
  for (int c = 0; c < out.components(); ++c) out.at(c, 0) = 0.0;
  return out;
}

SpectralField dealias(const SpectralField& f) {
  const auto mask = f.grid().dealias_mask();
  return scaled_per_mode(f, std::vector<double>(mask.begin(), mask.end()));
}

SpectralField dealias_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const int mf = f.components(), mg = g.components();
  if (mf != mg && mf != 1 && mg != 1) throw DimensionError("product needs equal or scalar component counts");
  const int m = std::max(mf, mg);
  const std::size_t n = f.modes();
  const auto pf = physical_dealiased(f);
  const auto pg = physical_dealiased(g);
  std::vector<cplx> out(n * m);
  const auto& kt = simd::active();
  for (int c = 0; c < m; ++c) {
    kt.real_product(pf.data() + (mf == 1 ? 0 : c) * n, pg.data() + (mg == 1 ? 0 : c) * n, out.data() + c * n, n);
    forward_dealiased(f.grid(), out.data() + c * n);
  }
  SpectralField res(f.grid(), m, std::move(out));
  res.enforce_hermitian();
  return res;
}

SpectralField tensor_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  const int ma = a.components(), mb = b.components();
  const std::size_t n = a.modes();
  const auto pa = physical_dealiased(a);
  const auto pb = &a == &b ? pa : physical_dealiased(b);
  std::vector<cplx> out(n * ma * mb);
  const auto& kt = simd::active();
  for (int i = 0; i < ma; ++i)
    for (int j = 0; j < mb; ++j) {
      cplx* dst = out.data() + (i * mb + j) * n;
      kt.real_product(pa.data() + i * n, pb.data() + j * n, dst, n);
      forward_dealiased(a.grid(), dst);
    }
  SpectralField res(a.grid(), ma * mb, std::move(out));
  res.enforce_hermitian();
  return res;
}

InterpolationCheck interpolation_check(const SpectralField& f, double s1, double s2, double lambda) {
  if (!(s1 < s2)) throw DomainError("interpolation needs s1 < s2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("interpolation weight must lie in [0, 1]");
  const double s = (1.0 - lambda) * s1 + lambda * s2;
  const double lhs = sobolev_norm(f, s);
  const double a = sobolev_norm(f, s1), b = sobolev_norm(f, s2);
  double rhs;
  if (lambda == 0.0)
    rhs = a;
  else if (lambda == 1.0)
    rhs = b;
  else
    rhs = std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
  return {lhs, rhs};
}

}  // namespace decaylab::spectral
