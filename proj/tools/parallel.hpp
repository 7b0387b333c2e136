#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mfwr::cli {

// body(i) for i in [0, n) on up to jobs threads. The library calls beneath
// are pure, so any schedule gives the same rows; callers keep determinism by
// writing into index i of a pre-sized buffer. Rethrows the first failure.
template <class F>
void parallel_for(std::int64_t n, int jobs, F&& body) {
  if (jobs < 2 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  const int k = static_cast<int>(std::min<std::int64_t>(jobs, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace mfwr::cli
