#include "decaylab/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace decaylab::spectral::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int x : n) total *= static_cast<std::size_t>(x);
    auto* buf = fftw_alloc_complex(total);
    // ESTIMATE keeps plan choice independent of timing, so runs are reproducible.
    fftw_plan plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const Grid& grid, std::complex<double>* data, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(grid.n(), sign), p, p);
}

}  // namespace

void forward(const Grid& grid, std::complex<double>* data) { run(grid, data, FFTW_FORWARD); }
void backward(const Grid& grid, std::complex<double>* data) { run(grid, data, FFTW_BACKWARD); }

}  // namespace decaylab::spectral::fft
