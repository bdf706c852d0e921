#include <doctest.h>

#include <random>
#include <vector>

#include "decaylab/simd/kernels.hpp"

using decaylab::simd::cplx;
using decaylab::simd::KernelTable;

namespace {

struct Data {
  std::vector<cplx> a, b;
  std::vector<double> w;
};

Data make(std::size_t n, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> nd;
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.a.emplace_back(nd(eng), nd(eng));
    d.b.emplace_back(nd(eng), nd(eng));
    d.w.push_back(std::abs(nd(eng)));
  }
  return d;
}

void compare(const KernelTable& ref, const KernelTable& alt, std::size_t n) {
  const Data d = make(n, static_cast<unsigned>(n) + 17);
  std::vector<cplx> x1 = d.a, x2 = d.a;
  ref.scale(x1.data(), d.w.data(), n);
  alt.scale(x2.data(), d.w.data(), n);
  CHECK(x1 == x2);

  std::vector<cplx> y1(n), y2(n);
  ref.scale_into(d.a.data(), d.w.data(), y1.data(), n);
  alt.scale_into(d.a.data(), d.w.data(), y2.data(), n);
  CHECK(y1 == y2);

  y1 = d.b;
  y2 = d.b;
  ref.axpy(d.a.data(), d.w.data(), y1.data(), n);
  alt.axpy(d.a.data(), d.w.data(), y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1 + std::abs(y1[i])));

  const double n1 = ref.weighted_norm2(d.a.data(), d.w.data(), n);
  const double n2 = alt.weighted_norm2(d.a.data(), d.w.data(), n);
  CHECK(std::abs(n1 - n2) <= 1e-13 * (1 + n1));

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale += std::abs(d.a[i]) * std::abs(d.b[i]);
  const double r1 = ref.real_dot(d.a.data(), d.b.data(), n);
  const double r2 = alt.real_dot(d.a.data(), d.b.data(), n);
  CHECK(std::abs(r1 - r2) <= 1e-14 * (1 + scale));

  std::vector<cplx> p1(n), p2(n);
  ref.real_product(d.a.data(), d.b.data(), p1.data(), n);
  alt.real_product(d.a.data(), d.b.data(), p2.data(), n);
  CHECK(p1 == p2);
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar kernels follow their definitions") {
    const auto& k = decaylab::simd::scalar_kernels();
    std::vector<cplx> x{{1, 2}, {3, -4}, {0.5, 0}};
    std::vector<double> w{2, 0.5, 4};
    k.scale(x.data(), w.data(), 3);
    CHECK(x[0] == cplx(2, 4));
    CHECK(x[1] == cplx(1.5, -2));
    CHECK(k.weighted_norm2(x.data(), w.data(), 3) == doctest::Approx(2 * 20 + 0.5 * 6.25 + 4 * 4));
    std::vector<cplx> a{{1, 1}}, b{{2, -3}}, out(1);
    CHECK(k.real_dot(a.data(), b.data(), 1) == doctest::Approx(-1.0));
    k.real_product(a.data(), b.data(), out.data(), 1);
    CHECK(out[0] == cplx(2, 0));
  }

  TEST_CASE("vector kernels agree with the scalar reference") {
    const auto* v = decaylab::simd::avx2_kernels();
    if (!v) {
      MESSAGE("AVX2 unavailable; only the scalar table is exercised");
      return;
    }
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 7u, 8u, 13u, 31u, 64u, 1000u, 4099u})
      compare(decaylab::simd::scalar_kernels(), *v, n);
  }

  TEST_CASE("dispatch selects a table") {
    const auto& a = decaylab::simd::active();
    CHECK((a.name == "scalar" || a.name == "avx2"));
  }
}
