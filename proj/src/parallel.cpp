#include "modspace/detail/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace modspace::detail {

std::size_t thread_count() {
  if (const char* env = std::getenv("MODSPACE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // malformed values fall back to auto
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
thread_local bool in_region = false;
}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = in_region ? 1 : std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      in_region = true;
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace modspace::detail
