#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

namespace apcl {

namespace detail {
inline std::atomic<int>& worker_count() {
  static std::atomic<int> n{1};
  return n;
}
}  // namespace detail

// Global worker count used when a call site does not pass its own.  Default 1;
// the CLI sets it from --threads.
inline int worker_threads() { return detail::worker_count().load(); }
inline void set_worker_threads(int n) {
  detail::worker_count().store(n < 1 ? 1 : n);
}

inline constexpr std::size_t kDefaultBlock = std::size_t(1) << 14;

// Block size for an n-element reduction: a pure function of n (so results
// are independent of the thread count) that still yields enough blocks for
// small arrays to spread across workers.
inline std::size_t pick_block(std::size_t n) {
  std::size_t b = (n + 63) / 64;
  if (b < 256) b = 256;
  const std::size_t cap = std::size_t(1) << 18;
  if (b > cap) b = cap;
  return b;
}

// Calls fn(block_index, begin, end) for every fixed-size block of [0, n).
// The partition depends only on n and block, never on the thread count, so
// any reduction that combines per-block results in block order is bit-stable
// across thread counts.
inline void parallel_blocks(
    std::size_t n, std::size_t block, int threads,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 0) threads = worker_threads();
  const std::size_t nblocks = (n + block - 1) / block;
  if (threads == 1 || nblocks == 1) {
    for (std::size_t b = 0; b < nblocks; ++b)
      fn(b, b * block, std::min(n, (b + 1) * block));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) break;
      fn(b, b * block, std::min(n, (b + 1) * block));
    }
  };
  std::vector<std::thread> pool;
  int t = std::min<std::size_t>(static_cast<std::size_t>(threads), nblocks);
  pool.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Kahan-compensated serial sum for use inside blocks.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

// fn(begin, end) returns the block's partial sum; partials are added in block
// order, so the total does not depend on the thread count.
inline double det_block_sum(
    std::size_t n, std::size_t block, int threads,
    const std::function<double(std::size_t, std::size_t)>& fn) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<double> partial(nblocks, 0.0);
  parallel_blocks(n, block, threads,
                  [&](std::size_t b, std::size_t lo, std::size_t hi) {
                    partial[b] = fn(lo, hi);
                  });
  KahanSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

// fn(begin, end) returns (max, argmax) for the block; merged in block order
// with ties going to the smaller index.
inline std::pair<double, std::size_t> det_block_max(
    std::size_t n, std::size_t block, int threads,
    const std::function<std::pair<double, std::size_t>(std::size_t,
                                                       std::size_t)>& fn) {
  const std::size_t nblocks = n == 0 ? 0 : (n + block - 1) / block;
  std::vector<std::pair<double, std::size_t>> partial(
      nblocks, {-std::numeric_limits<double>::infinity(), 0});
  parallel_blocks(n, block, threads,
                  [&](std::size_t b, std::size_t lo, std::size_t hi) {
                    partial[b] = fn(lo, hi);
                  });
  std::pair<double, std::size_t> best{
      -std::numeric_limits<double>::infinity(), 0};
  for (const auto& p : partial)
    if (p.first > best.first) best = p;
  return best;
}

}  // namespace apcl
