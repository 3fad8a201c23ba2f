#include "modspace/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace modspace::detail {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, FftDirection dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, dir == FftDirection::forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    // FFTW_UNALIGNED keeps a single codelet choice regardless of the caller's
    // buffer alignment, so repeated runs are bit-identical.
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, FftDirection dir) {
  if (data.size() <= 1) return;
  fftw_plan plan = cache().get(data.size(), dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace modspace::detail
