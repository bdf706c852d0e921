#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "decaylab/spectral/grid.hpp"

namespace decaylab::spectral {

using cplx = std::complex<double>;

// Fourier coefficients of a real m-component field on a periodic grid.
//
// Normalization, used everywhere in the library and in serialized files:
//   f(x) = sum_k c(k) e^{i k.x},   c(k) = (1/N_tot) sum_x f(x) e^{-i k.x},
// so cos(x) has c(+-1) = 1/2, and the continuum L2 norm is
//   ||f||^2 = integral |f|^2 dx = volume * sum_k |c(k)|^2.
// Coefficients are component-major: component c occupies
// [c*grid.size(), (c+1)*grid.size()) in the FFT mode order of Grid.
class SpectralField {
 public:
  SpectralField() = default;
  // Zero field.
  SpectralField(Grid grid, int components);
  // Takes ownership of `coeffs` (size components*grid.size()); Nyquist modes
  // are cleared.
  SpectralField(Grid grid, int components, std::vector<cplx> coeffs);

  const Grid& grid() const { return *grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_->size(); }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> component(int c) const;
  std::span<cplx> component(int c);
  cplx& at(int c, std::size_t flat) { return coeffs_[c * modes() + flat]; }
  cplx at(int c, std::size_t flat) const { return coeffs_[c * modes() + flat]; }

  // True when every component's k = 0 coefficient is at most
  // rel_tol * max|c| (exactly zero for the zero field).
  bool mean_zero(double rel_tol = 1e-12) const;
  double max_abs() const;

  // Replace c(k) by (c(k) + conj c(-k))/2 and clear Nyquist modes.
  void enforce_hermitian();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

 private:
  std::shared_ptr<const Grid> grid_;
  int components_ = 0;
  std::vector<cplx> coeffs_;
};

// Samples at x_j = j * L_i / N_i on each axis, row-major with axis 0
// slowest, component-major.
struct PhysicalField {
  Grid grid;
  int components = 1;
  std::vector<double> values;
};

SpectralField to_spectral(const PhysicalField& f);
SpectralField to_spectral(std::span<const double> samples, const Grid& grid, int components = 1);
PhysicalField to_physical(const SpectralField& f);

// Samples fn(component, x) on the grid.
PhysicalField sample(const Grid& grid, int components,
                     const std::function<double(int, const std::array<double, 3>&)>& fn);

void require_same_grid(const SpectralField& a, const SpectralField& b);

}  // namespace decaylab::spectral
