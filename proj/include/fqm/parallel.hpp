#ifndef FQM_PARALLEL_HPP
#define FQM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fqm {

/// Environment variable consulted when no explicit worker count is given.
inline constexpr const char* kWorkersEnv = "FQM_WORKERS";

/// requested > 0 wins; then FQM_WORKERS; then hardware concurrency.
inline unsigned resolve_workers(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/**
 * Calls fn(i) for every i in [0, n) on up to `workers` threads. Indices are
 * handed out dynamically; callers write results into per-index slots and
 * reduce serially afterwards, so output does not depend on scheduling.
 * The first exception thrown by any call is rethrown on the caller's thread.
 */
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const std::size_t count = std::min<std::size_t>(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(count - 1);
  for (std::size_t t = 0; t + 1 < count; ++t) threads.emplace_back(body);
  body();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fqm

#endif  // FQM_PARALLEL_HPP
