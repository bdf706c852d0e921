#include "decaylab/simd/kernels.hpp"

namespace decaylab::simd {
namespace {

void scale(cplx* x, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= w[i];
}

void scale_into(const cplx* x, const double* w, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = w[i] * x[i];
}

void axpy(const cplx* x, const double* w, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += w[i] * x[i];
}

double weighted_norm2(const cplx* x, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(x[i]);
  return s;
}

double real_dot(const cplx* a, const cplx* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

void real_product(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cplx(a[i].real() * b[i].real(), 0.0);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",     &scale,    &scale_into,  &axpy,
                                 &weighted_norm2, &real_dot, &real_product};
  return table;
}

}  // namespace decaylab::simd
