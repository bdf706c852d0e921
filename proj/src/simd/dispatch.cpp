#include <cstdlib>
#include <stdexcept>
#include <string>

#include "decaylab/simd/kernels.hpp"

namespace decaylab::simd {

#if DECAYLAB_WITH_AVX2
namespace avx2 {
const KernelTable& table();
}
#endif

const KernelTable* avx2_kernels() {
#if DECAYLAB_WITH_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("DECAYLAB_SIMD");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2") {
    if (const auto* t = avx2_kernels()) return *t;
    throw std::runtime_error("DECAYLAB_SIMD=avx2 requested but AVX2+FMA is unavailable");
  }
  if (want != "auto") throw std::runtime_error("DECAYLAB_SIMD must be scalar, avx2 or auto");
  if (const auto* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace decaylab::simd
