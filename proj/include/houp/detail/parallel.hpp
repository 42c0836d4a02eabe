#pragma once

#include <Eigen/Core>

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace houp::detail {

using Eigen::Index;

/// Fixed reduction block size. Partial results are produced per block and
/// combined in block order, so numerical results never depend on how many
/// workers ran.
inline constexpr Index kReductionBlock = 16384;

/// Worker cap: HOUP_THREADS if set (>= 1), otherwise all hardware threads.
inline int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("HOUP_THREADS")) {
      const int n = std::atoi(env);
      if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

inline Index block_count(Index n, Index block = kReductionBlock) {
  return (n + block - 1) / block;
}

/// Invokes fn(block_index, begin, end) for every block of [0, n), possibly on
/// several threads. Blocks are disjoint, so fn may write to per-block slots
/// without synchronization.
inline void for_each_block(Index n, const std::function<void(Index, Index, Index)>& fn,
                           Index block = kReductionBlock) {
  const Index blocks = block_count(n, block);
  const int workers = std::min<Index>(worker_count(), blocks);
  auto run_strided = [&](Index first) {
    for (Index b = first; b < blocks; b += workers) {
      const Index begin = b * block;
      fn(b, begin, std::min(begin + block, n));
    }
  };
  if (workers <= 1 || blocks <= 1) {
    run_strided(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (Index w = 1; w < workers; ++w) pool.emplace_back(run_strided, w);
  run_strided(0);
  for (auto& t : pool) t.join();
}

}  // namespace houp::detail
