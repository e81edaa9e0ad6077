#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ttp::detail {

// TTP_THREADS overrides the hardware thread count.
inline unsigned worker_count(std::size_t n) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TTP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) hw = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(n, 1)));
}

// Calls fn(i) for i in [0, n) on a small pool. Each index writes only its own
// slot, so results do not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned count = worker_count(n);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ttp::detail
