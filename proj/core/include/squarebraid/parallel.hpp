#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace squarebraid {

// Worker cap from SQUAREBRAID_THREADS; 0 means one per hardware thread,
// unset means a single worker. Results must not depend on the setting.
inline int thread_budget() {
  const char* s = std::getenv("SQUAREBRAID_THREADS");
  if (!s || !*s) return 1;
  int v = std::atoi(s);
  if (v == 0) v = static_cast<int>(std::thread::hardware_concurrency());
  return v < 1 ? 1 : v;
}

template <class F>
void parallel_for(size_t n, F&& fn) {
  int workers = thread_budget();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace squarebraid
