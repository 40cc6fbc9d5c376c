#include "metawave/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace metawave {

namespace {
std::atomic<int> g_threads{1};
}

void set_num_threads(int n) {
  if (n < 1) throw std::invalid_argument("set_num_threads: n < 1");
  g_threads.store(n);
}

int num_threads() { return g_threads.load(); }

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int nt = std::min(num_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      // Contiguous chunks: thread t covers [t*n/nt, (t+1)*n/nt).
      const int lo = static_cast<int>(static_cast<long long>(n) * t / nt);
      const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / nt);
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace metawave
