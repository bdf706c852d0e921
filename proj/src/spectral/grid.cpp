#include "decaylab/spectral/grid.hpp"

#include <cmath>
#include <string>

#include "decaylab/errors.hpp"

namespace decaylab::spectral {

Grid::Grid(std::vector<int> n, std::vector<double> l) : n_(std::move(n)), l_(std::move(l)) {
  if (n_.empty() || n_.size() > 3) throw DimensionError("grid dimension must be 1, 2 or 3");
  if (l_.size() != n_.size()) throw DimensionError("grid needs one period per axis");
  for (std::size_t i = 0; i < n_.size(); ++i) {
    if (n_[i] < 4 || n_[i] % 2 != 0)
      throw DimensionError("mode count per axis must be even and >= 4, got " + std::to_string(n_[i]));
    if (!(l_[i] > 0.0) || !std::isfinite(l_[i])) throw DimensionError("grid period must be positive");
  }
  const int d = dim();
  size_ = 1;
  for (int i = d - 1; i >= 0; --i) {
    stride_[i] = size_;
    size_ *= static_cast<std::size_t>(n_[i]);
  }

  auto t = std::make_shared<Tables>();
  for (int a = 0; a < d; ++a) t->k[a].resize(size_);
  t->k2.resize(size_);
  t->kmag.resize(size_);
  t->dealias.resize(size_);
  t->nyquist.resize(size_);
  t->conj.resize(size_);
  for (std::size_t f = 0; f < size_; ++f) {
    const auto idx = unflat(f);
    double k2 = 0.0;
    bool keep = true, nyq = false;
    std::size_t cf = 0;
    for (int a = 0; a < d; ++a) {
      const int s = signed_index(a, idx[a]);
      const double ka = 2.0 * std::numbers::pi * s / l_[a];
      t->k[a][f] = ka;
      k2 += ka * ka;
      if (3 * std::abs(s) >= n_[a]) keep = false;
      if (idx[a] == n_[a] / 2) nyq = true;
      cf += stride_[a] * static_cast<std::size_t>((n_[a] - idx[a]) % n_[a]);
    }
    t->k2[f] = k2;
    t->kmag[f] = std::sqrt(k2);
    t->dealias[f] = keep ? 1.0 : 0.0;
    t->nyquist[f] = nyq ? 0.0 : 1.0;
    t->conj[f] = cf;
  }
  tables_ = std::move(t);
}

Grid Grid::cube(int dim, int n, double length) {
  return Grid(std::vector<int>(dim, n), std::vector<double>(dim, length));
}

double Grid::volume() const {
  double v = 1.0;
  for (double x : l_) v *= x;
  return v;
}

std::size_t Grid::flat(std::span<const int> idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim(); ++a) f += stride_[a] * static_cast<std::size_t>(idx[a]);
  return f;
}

std::array<int, 3> Grid::unflat(std::size_t f) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    idx[a] = static_cast<int>(f / stride_[a]);
    f %= stride_[a];
  }
  return idx;
}

std::array<double, 3> Grid::wavevector(std::size_t f) const {
  std::array<double, 3> k{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) k[a] = tables_->k[a][f];
  return k;
}

}  // namespace decaylab::spectral
