// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sepvol {

/// Welford accumulator with Chan's pairwise merge.
struct RunningStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) noexcept {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double total = na + nb;
    const double delta = o.mean - mean;
    mean += delta * nb / total;
    m2 += o.m2 + delta * delta * na * nb / total;
    n += o.n;
  }

  [[nodiscard]] double variance() const noexcept {
    return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
  [[nodiscard]] double std_error() const noexcept {
    return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  /// accepted / proposed for rejection samplers, 1 otherwise.
  double acceptance_rate = 1.0;
  std::uint64_t seed = 0;
};

/// How Monte Carlo work is cut up. The sample count is split over a fixed
/// number of streams (seed, 0..streams-1); threads only decide who runs which
/// stream, so results do not depend on the thread count.
struct ParallelPlan {
  std::uint64_t seed = 0;
  std::uint32_t streams = 16;
  unsigned threads = 1;

  /// Samples assigned to stream s out of n.
  [[nodiscard]] std::uint64_t share(std::uint64_t n, std::uint32_t s) const noexcept {
    return n / streams + (s < n % streams ? 1 : 0);
  }
};

/// Runs fn(stream_index) for every stream on up to plan.threads threads and
/// returns the per-stream results in stream order. The first exception thrown
/// by any worker is rethrown.
template <class Fn>
auto for_each_stream(const ParallelPlan& plan, Fn&& fn) {
  using R = decltype(fn(std::uint32_t{}));
  std::vector<R> out(plan.streams);
  const unsigned workers = std::max(1u, std::min<unsigned>(plan.threads, plan.streams));
  if (workers == 1) {
    for (std::uint32_t s = 0; s < plan.streams; ++s) out[s] = fn(s);
    return out;
  }
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint32_t s = next.fetch_add(1);
      if (s >= plan.streams) return;
      try {
        out[s] = fn(s);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Per-stream tallies merged in stream order.
struct StreamTally {
  RunningStats stats;
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;

  void merge(const StreamTally& o) noexcept {
    stats.merge(o.stats);
    proposed += o.proposed;
    accepted += o.accepted;
  }
};

inline MCEstimate to_estimate(const std::vector<StreamTally>& parts, std::uint64_t seed) {
  StreamTally total;
  for (const auto& p : parts) total.merge(p);
  MCEstimate e;
  e.mean = total.stats.mean;
  e.std_error = total.stats.std_error();
  e.n = total.stats.n;
  e.acceptance_rate =
      total.proposed > 0 ? static_cast<double>(total.accepted) / static_cast<double>(total.proposed) : 1.0;
  e.seed = seed;
  return e;
}

}  // namespace sepvol
