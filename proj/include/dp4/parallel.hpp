#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dp4 {

// Default worker count: MANIN_DP4_THREADS if set, else 1.
inline int default_threads() {
  if (const char* s = std::getenv("MANIN_DP4_THREADS")) {
    try {
      int n = std::stoi(s);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return 1;
}

// Runs fn(i) for i in [0, n) on `threads` workers pulling indices from a shared counter.
// The first exception thrown by any worker is rethrown after all workers stop.
template <class Fn>
void parallel_for_dynamic(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      if (failed.load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int t = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));
  for (int k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace dp4
