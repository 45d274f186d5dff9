/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_PARALLEL_HPP
#define UQC_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace uqc {

// Worker cap for grid sweeps: UQC_THREADS when set, machine cores otherwise.
inline int sweep_thread_cap() {
  if (const char* env = std::getenv("UQC_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) on up to sweep_thread_cap() workers.  Each index writes
// only its own slot, so results are position-deterministic regardless of
// scheduling.
inline void parallel_for_index(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(count, sweep_thread_cap());
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace uqc

#endif
