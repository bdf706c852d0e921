#include "decaylab/spectral/symbol.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "decaylab/errors.hpp"

namespace decaylab::spectral {

MultiplierSymbol::MultiplierSymbol(std::string name, int out, int in, Rational degree, SymbolFn fn)
    : name_(std::move(name)), out_(out), in_(in), degree_(degree), fn_(std::move(fn)) {
  if (out < 1 || in < 1) throw DimensionError("symbol '" + name_ + "' needs positive shape");
}

void MultiplierSymbol::evaluate(const Wavenumber& k, cplx* m) const {
  if (k.magnitude == 0.0) {
    std::fill(m, m + out_ * in_, cplx{});
    return;
  }
  fn_(k, m);
}

std::vector<cplx> MultiplierSymbol::evaluate(const Wavenumber& k) const {
  std::vector<cplx> m(out_ * in_);
  evaluate(k, m.data());
  return m;
}

double MultiplierSymbol::gain_bound(const Grid& grid) const {
  std::vector<cplx> m(out_ * in_);
  double best = 0.0;
  const double deg = degree_.to_double();
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (grid.nyquist_mask()[f] == 0.0 || grid.k_magnitude()[f] == 0.0) continue;
    Wavenumber k{grid.wavevector(f), grid.k_magnitude()[f], grid.dim()};
    evaluate(k, m.data());
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
        m.data(), out_, in_);
    const double s = Eigen::JacobiSVD<Eigen::MatrixXcd>(mat).singularValues()(0);
    best = std::max(best, s / std::pow(k.magnitude, deg));
  }
  return best;
}

MultiplierSymbol MultiplierSymbol::scaled(cplx factor) const {
  auto inner = fn_;
  const int n = out_ * in_;
  return MultiplierSymbol(name_, out_, in_, degree_, [inner, factor, n](const Wavenumber& k, cplx* m) {
    inner(k, m);
    for (int i = 0; i < n; ++i) m[i] *= factor;
  });
}

MultiplierSymbol MultiplierSymbol::renamed(std::string name) const {
  MultiplierSymbol s = *this;
  s.name_ = std::move(name);
  return s;
}

MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  if (a.in() != b.out())
    throw DimensionError("cannot compose '" + a.name() + "' (" + std::to_string(a.in()) + " inputs) after '" +
                         b.name() + "' (" + std::to_string(b.out()) + " outputs)");
  const int o = a.out(), mid = a.in(), in = b.in();
  return MultiplierSymbol(a.name() + "*" + b.name(), o, in, a.degree() + b.degree(),
                          [a, b, o, mid, in](const Wavenumber& k, cplx* m) {
                            std::vector<cplx> ma(o * mid), mb(mid * in);
                            a.evaluate(k, ma.data());
                            b.evaluate(k, mb.data());
                            for (int r = 0; r < o; ++r)
                              for (int c = 0; c < in; ++c) {
                                cplx s{};
                                for (int j = 0; j < mid; ++j) s += ma[r * mid + j] * mb[j * in + c];
                                m[r * in + c] = s;
                              }
                          });
}

SymbolTable::SymbolTable(const MultiplierSymbol& z, const Grid& grid)
    : out_(z.out()), in_(z.in()), modes_(grid.size()) {
  data_.assign(static_cast<std::size_t>(out_ * in_) * modes_, cplx{});
  nonzero_.assign(out_ * in_, 0);
  std::vector<cplx> m(out_ * in_);
  const auto nyq = grid.nyquist_mask();
  for (std::size_t f = 0; f < modes_; ++f) {
    if (nyq[f] == 0.0) continue;
    z.evaluate(Wavenumber{grid.wavevector(f), grid.k_magnitude()[f], grid.dim()}, m.data());
    for (int e = 0; e < out_ * in_; ++e) {
      data_[e * modes_ + f] = m[e];
      if (m[e] != cplx{}) nonzero_[e] = 1;
    }
  }
}

void SymbolTable::apply(const cplx* x, cplx* y) const {
  for (int o = 0; o < out_; ++o) {
    cplx* yo = y + o * modes_;
    std::fill(yo, yo + modes_, cplx{});
    for (int i = 0; i < in_; ++i) {
      if (!nonzero_[o * in_ + i]) continue;
      const cplx* z = entry(o, i);
      const cplx* xi = x + i * modes_;
      for (std::size_t f = 0; f < modes_; ++f) yo[f] += z[f] * xi[f];
    }
  }
}

namespace symbols {

namespace {
const cplx I{0.0, 1.0};
}

MultiplierSymbol identity(int m) {
  return MultiplierSymbol("id", m, m, 0, [m](const Wavenumber&, cplx* out) {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out[r * m + c] = r == c ? 1.0 : 0.0;
  });
}

MultiplierSymbol dx(int axis) {
  return MultiplierSymbol("dx" + std::to_string(axis + 1), 1, 1, 1, [axis](const Wavenumber& k, cplx* out) {
    if (axis >= k.dim) throw DimensionError("derivative axis exceeds grid dimension");
    out[0] = I * k.k[axis];
  });
}

MultiplierSymbol grad(int d) {
  return MultiplierSymbol("grad", d, 1, 1, [d](const Wavenumber& k, cplx* out) {
    for (int j = 0; j < d; ++j) out[j] = I * k.k[j];
  });
}

MultiplierSymbol div(int d) {
  return MultiplierSymbol("div", 1, d, 1, [d](const Wavenumber& k, cplx* out) {
    for (int j = 0; j < d; ++j) out[j] = I * k.k[j];
  });
}

MultiplierSymbol div_tensor(int d) {
  return MultiplierSymbol("div_tensor", d, d * d, 1, [d](const Wavenumber& k, cplx* out) {
    std::fill(out, out + d * d * d, cplx{});
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out[a * d * d + a * d + b] = I * k.k[b];
  });
}

MultiplierSymbol riesz(int axis) {
  return MultiplierSymbol("riesz" + std::to_string(axis + 1), 1, 1, 0, [axis](const Wavenumber& k, cplx* out) {
    if (axis >= k.dim) throw DimensionError("Riesz axis exceeds grid dimension");
    out[0] = I * k.k[axis] / k.magnitude;
  });
}

MultiplierSymbol riesz_perp() {
  return MultiplierSymbol("riesz_perp", 2, 1, 0, [](const Wavenumber& k, cplx* out) {
    if (k.dim != 2) throw DimensionError("riesz_perp needs a 2D grid");
    out[0] = -I * k.k[1] / k.magnitude;
    out[1] = I * k.k[0] / k.magnitude;
  });
}

MultiplierSymbol lambda(Rational s, int m) {
  const double e = s.to_double();
  return MultiplierSymbol("lambda(" + s.str() + ")", m, m, s, [e, m](const Wavenumber& k, cplx* out) {
    const double v = std::pow(k.magnitude, e);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out[r * m + c] = r == c ? v : 0.0;
  });
}

MultiplierSymbol inv_laplacian(int m) {
  return MultiplierSymbol("inv_lap", m, m, -2, [m](const Wavenumber& k, cplx* out) {
    const double v = -1.0 / (k.magnitude * k.magnitude);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out[r * m + c] = r == c ? v : 0.0;
  });
}

MultiplierSymbol leray(int d) {
  return MultiplierSymbol("leray", d, d, 0, [d](const Wavenumber& k, cplx* out) {
    const double k2 = k.magnitude * k.magnitude;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) out[r * d + c] = (r == c ? 1.0 : 0.0) - k.k[r] * k.k[c] / k2;
  });
}

}  // namespace symbols

}  // namespace decaylab::spectral
