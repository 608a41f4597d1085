#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace dislox {

/// Worker cap: DISLOX_THREADS when set (>= 1), all cores otherwise.
inline int max_threads() {
  if (const char* env = std::getenv("DISLOX_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Index-parallel loop with a static cyclic partition. Results must be
/// written by index only, which keeps every run bitwise independent of the
/// thread count. The first exception thrown by any worker is rethrown on
/// the calling thread.
template <typename F>
void parallel_for(int n, F&& body) {
  const int workers = std::min(max_threads(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace dislox
