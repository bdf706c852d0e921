#include "decaylab/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decaylab/errors.hpp"
#include "decaylab/spectral/fft.hpp"

namespace decaylab::spectral {

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::make_shared<const Grid>(std::move(grid))), components_(components) {
  if (components < 1) throw DimensionError("field needs at least one component");
  coeffs_.assign(static_cast<std::size_t>(components) * grid_->size(), cplx{});
}

SpectralField::SpectralField(Grid grid, int components, std::vector<cplx> coeffs)
    : grid_(std::make_shared<const Grid>(std::move(grid))),
      components_(components),
      coeffs_(std::move(coeffs)) {
  if (components < 1) throw DimensionError("field needs at least one component");
  if (coeffs_.size() != static_cast<std::size_t>(components) * grid_->size())
    throw DimensionError("coefficient count " + std::to_string(coeffs_.size()) + " does not match " +
                         std::to_string(components) + " x " + std::to_string(grid_->size()));
  const auto nyq = grid_->nyquist_mask();
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t f = 0; f < comp.size(); ++f)
      if (nyq[f] == 0.0) comp[f] = 0.0;
  }
}

std::span<const cplx> SpectralField::component(int c) const {
  if (c < 0 || c >= components_) throw DimensionError("component index out of range");
  return std::span<const cplx>(coeffs_).subspan(c * modes(), modes());
}

std::span<cplx> SpectralField::component(int c) {
  if (c < 0 || c >= components_) throw DimensionError("component index out of range");
  return std::span<cplx>(coeffs_).subspan(c * modes(), modes());
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const cplx& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

bool SpectralField::mean_zero(double rel_tol) const {
  const double scale = max_abs();
  for (int c = 0; c < components_; ++c)
    if (std::abs(at(c, 0)) > rel_tol * scale) return false;
  return true;
}

void SpectralField::enforce_hermitian() {
  const Grid& g = grid();
  const auto nyq = g.nyquist_mask();
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t f = 0; f < comp.size(); ++f) {
      if (nyq[f] == 0.0) {
        comp[f] = 0.0;
        continue;
      }
      const std::size_t cf = g.conjugate(f);
      if (cf < f) continue;
      if (cf == f) {
        comp[f] = comp[f].real();
      } else {
        const cplx avg = 0.5 * (comp[f] + std::conj(comp[cf]));
        comp[f] = avg;
        comp[cf] = std::conj(avg);
      }
    }
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o);
  if (o.components_ != components_) throw DimensionError("component count mismatch in sum");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o);
  if (o.components_ != components_) throw DimensionError("component count mismatch in difference");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (cplx& z : coeffs_) z *= a;
  return *this;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw GridMismatch("fields live on different grids");
}

SpectralField to_spectral(std::span<const double> samples, const Grid& grid, int components) {
  if (components < 1) throw DimensionError("field needs at least one component");
  const std::size_t n = grid.size();
  if (samples.size() != n * static_cast<std::size_t>(components))
    throw DimensionError("sample count " + std::to_string(samples.size()) + " does not match grid of " +
                         std::to_string(n) + " points x " + std::to_string(components) + " components");
  std::vector<cplx> buf(samples.begin(), samples.end());
  const double inv = 1.0 / static_cast<double>(n);
  for (int c = 0; c < components; ++c) {
    cplx* block = buf.data() + c * n;
    fft::forward(grid, block);
    for (std::size_t i = 0; i < n; ++i) block[i] *= inv;
  }
  SpectralField out(grid, components, std::move(buf));
  out.enforce_hermitian();
  return out;
}

SpectralField to_spectral(const PhysicalField& f) { return to_spectral(f.values, f.grid, f.components); }

PhysicalField to_physical(const SpectralField& f) {
  const std::size_t n = f.modes();
  std::vector<cplx> buf(f.coeffs().begin(), f.coeffs().end());
  PhysicalField out{f.grid(), f.components(), std::vector<double>(buf.size())};
  for (int c = 0; c < f.components(); ++c) {
    fft::backward(f.grid(), buf.data() + c * n);
    for (std::size_t i = 0; i < n; ++i) out.values[c * n + i] = buf[c * n + i].real();
  }
  return out;
}

PhysicalField sample(const Grid& grid, int components,
                     const std::function<double(int, const std::array<double, 3>&)>& fn) {
  PhysicalField out{grid, components, std::vector<double>(grid.size() * components)};
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const auto idx = grid.unflat(f);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) x[a] = idx[a] * grid.spacing(a);
    for (int c = 0; c < components; ++c) out.values[c * grid.size() + f] = fn(c, x);
  }
  return out;
}

}  // namespace decaylab::spectral
