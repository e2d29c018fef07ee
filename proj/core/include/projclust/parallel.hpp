#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace projclust {

// Runs fn(0..count) split across up to `threads` workers. Each index must
// write only to its own output slot; results are then independent of the
// worker count, so parallel runs stay bit-identical to serial ones.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([w, workers, count, &fn] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace projclust
