#pragma once
// Data-parallel inner loops of the spectral code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The table in use is chosen once per process from the CPU features,
// unless DECAYLAB_SIMD=scalar|avx2 overrides it. Complex arrays are
// interleaved (re, im) pairs, the std::complex<double> layout.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace decaylab::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // x[i] *= w[i]
  void (*scale)(cplx* x, const double* w, std::size_t n);
  // y[i] = w[i] * x[i]
  void (*scale_into)(const cplx* x, const double* w, cplx* y, std::size_t n);
  // y[i] += w[i] * x[i]
  void (*axpy)(const cplx* x, const double* w, cplx* y, std::size_t n);
  // sum_i w[i] * |x[i]|^2
  double (*weighted_norm2)(const cplx* x, const double* w, std::size_t n);
  // sum_i Re(conj(a[i]) * b[i])
  double (*real_dot)(const cplx* a, const cplx* b, std::size_t n);
  // out[i] = Re(a[i]) * Re(b[i]) + 0i
  void (*real_product)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// The table selected for this process.
const KernelTable& active();

// Span conveniences over active().
inline void scale(std::span<cplx> x, std::span<const double> w) {
  active().scale(x.data(), w.data(), x.size());
}
inline double weighted_norm2(std::span<const cplx> x, std::span<const double> w) {
  return active().weighted_norm2(x.data(), w.data(), x.size());
}
inline double real_dot(std::span<const cplx> a, std::span<const cplx> b) {
  return active().real_dot(a.data(), b.data(), a.size());
}

}  // namespace decaylab::simd
