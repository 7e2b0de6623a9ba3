#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace pzeta {

// Process-wide default worker cap; 0 means hardware concurrency.
inline unsigned& default_thread_cap() {
  static unsigned cap = 0;
  return cap;
}

inline unsigned resolve_threads(unsigned requested) {
  unsigned n = requested ? requested : default_thread_cap();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Runs f(chunk_index) for chunk_index in [0, n_chunks) on up to `threads`
// workers.  Chunk boundaries are fixed by the caller independent of the
// worker count, so any chunk-indexed partial results can be merged in
// index order for bit-stable output regardless of parallelism.
template <class F>
void parallel_chunks(std::size_t n_chunks, unsigned threads, F&& f) {
  unsigned n_workers = resolve_threads(threads);
  if (n_workers <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) f(c);
    return;
  }
  if (n_workers > n_chunks) n_workers = static_cast<unsigned>(n_chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      f(c);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_workers - 1);
  for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace pzeta
