#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sclop::detail {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index is
// claimed exactly once from a shared counter, so any writes keyed by i are
// race-free and the combined result does not depend on the schedule. The
// first exception is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::int64_t count, int jobs, Fn&& fn) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(jobs, count)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) threads.emplace_back(body);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sclop::detail
