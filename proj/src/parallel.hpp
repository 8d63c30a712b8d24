#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace edgeguard::detail {

/// Runs task(i) for i in [0, count) on `jobs` workers. A task returns true
/// to report a stop event; once one is seen, indices above the lowest stop
/// index are skipped. Every index below the returned one has run, so the
/// caller can aggregate a prefix that does not depend on scheduling.
/// Returns the lowest stop index, or count when none occurred.
template <class Task>
std::uint64_t run_ordered(std::uint64_t count, std::size_t jobs, Task&& task) {
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> stop{count};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || i > stop.load()) return;
      try {
        if (task(i)) {
          std::uint64_t cur = stop.load();
          while (i < cur && !stop.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop.store(0);
        return;
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return stop.load();
}

}  // namespace edgeguard::detail
