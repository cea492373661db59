#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qdephase::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_index, begin, end) over [0, n_items) in fixed-size index
// blocks. Which thread executes a block is arbitrary; results must go into
// per-block slots so the combined output is independent of the schedule.
template <typename Fn>
void for_each_block(std::size_t n_items, std::size_t block_size, int n_threads,
                    Fn&& fn) {
  if (n_items == 0) return;
  const std::size_t n_blocks = (n_items + block_size - 1) / block_size;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(n_threads)),
                            n_blocks);
  auto run_block = [&](std::size_t b) {
    fn(b, b * block_size, std::min(n_items, (b + 1) * block_size));
  };
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) return;
      run_block(b);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
}

}  // namespace qdephase::detail
