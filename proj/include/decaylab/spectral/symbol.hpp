#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "decaylab/rational.hpp"
#include "decaylab/spectral/grid.hpp"

namespace decaylab::spectral {

using cplx = std::complex<double>;

struct Wavenumber {
  std::array<double, 3> k{};
  double magnitude = 0.0;
  int dim = 1;
};

// Writes the out x in matrix at a nonzero wavenumber, row-major.
using SymbolFn = std::function<void(const Wavenumber&, cplx*)>;

// A Fourier multiplier, homogeneous of degree `degree()`, whose value at
// k = 0 is the zero matrix.
class MultiplierSymbol {
 public:
  MultiplierSymbol(std::string name, int out, int in, Rational degree, SymbolFn fn);

  const std::string& name() const { return name_; }
  int out() const { return out_; }
  int in() const { return in_; }
  Rational degree() const { return degree_; }

  // matrix_out must hold out()*in() values.
  void evaluate(const Wavenumber& k, cplx* matrix_out) const;
  std::vector<cplx> evaluate(const Wavenumber& k) const;

  // sup over nonzero lattice modes of |symbol(k)|_2 / |k|^degree.
  double gain_bound(const Grid& grid) const;

  MultiplierSymbol scaled(cplx factor) const;
  MultiplierSymbol renamed(std::string name) const;

 private:
  std::string name_;
  int out_, in_;
  Rational degree_;
  SymbolFn fn_;
};

// a after b: (a o b)(k) = a(k) b(k).
MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b);

// The symbol sampled on every mode of a grid, with all-zero entries skipped
// when applied.
class SymbolTable {
 public:
  SymbolTable(const MultiplierSymbol& z, const Grid& grid);

  int out() const { return out_; }
  int in() const { return in_; }
  std::size_t modes() const { return modes_; }
  // out_coeffs[o*modes + f] = sum_i Z_oi(k_f) in_coeffs[i*modes + f]
  void apply(const cplx* in_coeffs, cplx* out_coeffs) const;
  const cplx* entry(int o, int i) const { return data_.data() + (o * in_ + i) * modes_; }
  bool is_zero(int o, int i) const { return !nonzero_[o * in_ + i]; }

 private:
  int out_, in_;
  std::size_t modes_;
  std::vector<cplx> data_;
  std::vector<char> nonzero_;
};

namespace symbols {

MultiplierSymbol identity(int m);
// i k_j, acting on scalars.
MultiplierSymbol dx(int axis);
// (i k_1, ..., i k_d)^T, scalar -> vector.
MultiplierSymbol grad(int d);
// sum_j i k_j v_j, vector -> scalar.
MultiplierSymbol div(int d);
// (div P)_a = sum_b i k_b P[a*d + b], d x d tensor -> vector.
MultiplierSymbol div_tensor(int d);
// i k_j / |k|.
MultiplierSymbol riesz(int axis);
// (-i k_2, i k_1)/|k|, 2D scalar -> vector.
MultiplierSymbol riesz_perp();
// |k|^s on m components.
MultiplierSymbol lambda(Rational s, int m = 1);
// -1/|k|^2 on m components.
MultiplierSymbol inv_laplacian(int m = 1);
// I - k k^T / |k|^2.
MultiplierSymbol leray(int d);

}  // namespace symbols

}  // namespace decaylab::spectral
