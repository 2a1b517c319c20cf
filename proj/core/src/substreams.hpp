#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "dicelab/error.hpp"

namespace dicelab {

inline int pick_threads(int threads, int substreams) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : int(hw);
  }
  return std::min(threads, substreams);
}

// Splits N over a fixed substream grid and runs work(i, count_i, state_i).
// States come back in index order, so merges are deterministic regardless of
// the executing thread count.  work builds its own substream Rngs from i.
template <typename State, typename Work>
std::vector<State> run_substreams(std::uint64_t N, int substreams, int threads, Work work) {
  if (substreams < 1) fail(Err::BadConfig, "substreams must be >= 1");
  std::vector<State> states(static_cast<std::size_t>(substreams));
  std::atomic<int> cursor{0};
  auto body = [&]() {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= substreams) return;
      const std::uint64_t count =
          N / std::uint64_t(substreams) + (std::uint64_t(i) < N % std::uint64_t(substreams));
      work(i, count, states[std::size_t(i)]);
    }
  };
  const int workers = pick_threads(threads, substreams);
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return states;
}

}  // namespace dicelab
