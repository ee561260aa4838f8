#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace graphhom {

// Worker-count policy: explicit setting, then the environment, then the
// hardware. Results never depend on the count, only wall time does.
inline int& worker_count_override() {
  static int value = 0;
  return value;
}

inline int worker_count() {
  if (worker_count_override() > 0) return worker_count_override();
  if (const char* env = std::getenv("GRAPHHOM_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) on up to worker_count() threads. The caller
// is responsible for making per-index work independent.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

} // namespace graphhom
