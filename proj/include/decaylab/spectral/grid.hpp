#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace decaylab::spectral {

// Uniform periodic grid on [0, L_0) x ... x [0, L_{d-1}).
//
// Modes are stored in FFT order, row-major with axis 0 slowest: along axis i the
// index m in [0, N_i) stands for the integer wavenumber m for m < N_i/2 and
// m - N_i otherwise, and the physical wavenumber is k_i = 2*pi*m/L_i. The Nyquist
// index m = N_i/2 belongs to no field; every field keeps it at zero amplitude.
//
// Grid is a cheap value type: the per-mode tables are built once and shared.
class Grid {
 public:
  Grid(std::vector<int> n, std::vector<double> l);
  // Cube of side 2*pi with n modes per axis.
  static Grid cube(int dim, int n, double length = 2.0 * std::numbers::pi);

  int dim() const { return static_cast<int>(n_.size()); }
  const std::vector<int>& n() const { return n_; }
  const std::vector<double>& l() const { return l_; }
  std::size_t size() const { return size_; }
  double volume() const;
  double spacing(int axis) const { return l_[axis] / n_[axis]; }

  // Signed integer wavenumber along `axis` for storage index m.
  int signed_index(int axis, int m) const { return m < n_[axis] / 2 ? m : m - n_[axis]; }
  // Storage index of signed integer wavenumber s along `axis`.
  int storage_index(int axis, int s) const { return s >= 0 ? s : s + n_[axis]; }

  // Flat index <-> per-axis storage indices.
  std::size_t flat(std::span<const int> idx) const;
  std::array<int, 3> unflat(std::size_t flat) const;
  // Flat index of the mode -k for the mode at `flat`.
  std::size_t conjugate(std::size_t flat) const { return tables_->conj[flat]; }

  // Physical wavenumber components of mode `flat`, kd[j] for j < dim().
  std::array<double, 3> wavevector(std::size_t flat) const;
  std::span<const double> k_axis(int axis) const { return tables_->k[axis]; }
  std::span<const double> k_squared() const { return tables_->k2; }
  std::span<const double> k_magnitude() const { return tables_->kmag; }
  // 1.0 for modes kept by the 2/3 rule (3|m_i| < N_i on every axis), else 0.0.
  std::span<const double> dealias_mask() const { return tables_->dealias; }
  // 0.0 on Nyquist modes, 1.0 elsewhere.
  std::span<const double> nyquist_mask() const { return tables_->nyquist; }

  bool operator==(const Grid& other) const { return n_ == other.n_ && l_ == other.l_; }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  struct Tables {
    std::array<std::vector<double>, 3> k;
    std::vector<double> k2, kmag, dealias, nyquist;
    std::vector<std::size_t> conj;
  };
  std::vector<int> n_;
  std::vector<double> l_;
  std::size_t size_ = 0;
  std::array<std::size_t, 3> stride_{};
  std::shared_ptr<const Tables> tables_;
};

}  // namespace decaylab::spectral
