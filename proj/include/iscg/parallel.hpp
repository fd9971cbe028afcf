#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace iscg {

inline int default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count) across `threads` workers and returns
/// the results indexed by i. The output is independent of the worker
/// count; fn must be safe to call concurrently on distinct indices.
template <typename Fn>
auto parallel_map(std::size_t count, int threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::size_t nworkers = static_cast<std::size_t>(threads);
  if (nworkers > count) nworkers = count;
  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  for (std::size_t w = 0; w < nworkers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += nworkers) results[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace iscg
