// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "decaylab/simd/kernels.hpp"

namespace decaylab::simd::avx2 {
namespace {

// Two complex values per 256-bit register; w[i] is broadcast to both lanes.
inline __m256d load_weight_pair(const double* w) {
  const __m128d two = _mm_loadu_pd(w);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(two), 0b01010000);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void scale(cplx* x, const double* w, std::size_t n) {
  auto* p = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, load_weight_pair(w + i)));
  }
  for (; i < n; ++i) x[i] *= w[i];
}

void scale_into(const cplx* x, const double* w, cplx* y, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  auto* q = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(q + 2 * i, _mm256_mul_pd(v, load_weight_pair(w + i)));
  }
  for (; i < n; ++i) y[i] = w[i] * x[i];
}

void axpy(const cplx* x, const double* w, cplx* y, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  auto* q = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    const __m256d acc = _mm256_loadu_pd(q + 2 * i);
    _mm256_storeu_pd(q + 2 * i, _mm256_fmadd_pd(v, load_weight_pair(w + i), acc));
  }
  for (; i < n; ++i) y[i] += w[i] * x[i];
}

double weighted_norm2(const cplx* x, const double* w, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(v0, v0), load_weight_pair(w + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(v1, v1), load_weight_pair(w + i + 2), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * std::norm(x[i]);
  return s;
}

double real_dot(const cplx* a, const cplx* b, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(a);
  const auto* q = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(p + 2 * i), _mm256_loadu_pd(q + 2 * i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(p + 2 * i + 4), _mm256_loadu_pd(q + 2 * i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

void real_product(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(a);
  const auto* q = reinterpret_cast<const double*>(b);
  auto* r = reinterpret_cast<double*>(out);
  const __m256d keep_re = _mm256_castsi256_pd(_mm256_set_epi64x(0, -1, 0, -1));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), _mm256_loadu_pd(q + 2 * i));
    _mm256_storeu_pd(r + 2 * i, _mm256_and_pd(prod, keep_re));
  }
  for (; i < n; ++i) out[i] = cplx(a[i].real() * b[i].real(), 0.0);
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", &scale, &scale_into, &axpy, &weighted_norm2, &real_dot, &real_product};
  return t;
}

}  // namespace decaylab::simd::avx2
