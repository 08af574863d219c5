#pragma once

// Minimal deterministic parallel map over an index space. Each index is
// processed exactly once and writes only to its own output slot, so results
// never depend on the thread count or scheduling order.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mmahh {

inline void parallel_for_index(std::uint64_t count, unsigned threads,
                               const std::function<void(std::uint64_t)>& fn) {
  if (count == 0) return;
  if (threads == 0) threads = 1;
  if (threads > count) threads = static_cast<unsigned>(count);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mmahh
