#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pi2ch/curvature.hpp"

namespace pi2ch {

namespace {

std::pair<TangentPair, TangentPair> scan_pair(const GridSpec& grid, const ScanOptions& options, int index) {
  auto rng = trial_generator(options.seed, static_cast<std::uint64_t>(index));
  TangentPair u = random_tangent(grid, options.max_mode, rng);
  TangentPair v = random_tangent(grid, options.max_mode, rng);
  switch (options.kind) {
    case ScanPairKind::random:
      break;
    case ScanPairKind::ch_reduced: {
      const auto zero = PeriodicField::zeros(grid);
      u = TangentPair::from_representative(u.v1(), zero);
      v = TangentPair::from_representative(v.v1(), zero);
      break;
    }
    case ScanPairKind::degenerate: {
      std::uniform_real_distribution<double> scale(0.5, 2.0);
      v = scale(rng) * u;
      break;
    }
  }
  return {std::move(u), std::move(v)};
}

}  // namespace

std::vector<ScanEntry> curvature_scan(const GridSpec& grid, const ScanOptions& options) {
  if (options.pair_count < 1) throw DomainError("curvature_scan: pair_count must be >= 1");
  const int total = options.pair_count + (options.include_counterexample ? 1 : 0);
  std::vector<ScanEntry> entries(static_cast<std::size_t>(total));

  auto evaluate = [&](int i) {
    if (i < options.pair_count) {
      const auto [u, v] = scan_pair(grid, options, i);
      entries[i] = {i, sectional_closed(u, v)};
    } else {
      const auto [u, v] = counterexample_pair(grid);
      entries[i] = {i, sectional_closed(u, v)};
    }
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(total));
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) evaluate(i);
    return entries;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < total; i = next++) {
        try {
          evaluate(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return entries;
}

ScanSummary summarize(const std::vector<ScanEntry>& entries, double zero_tolerance) {
  ScanSummary s;
  for (const auto& e : entries) {
    const auto& r = e.report;
    s.max_abs_diff = std::max(s.max_abs_diff, r.abs_diff);
    s.max_relative_diff = std::max(s.max_relative_diff, r.relative_diff());
    s.max_abs_mu_correction = std::max(s.max_abs_mu_correction, std::abs(r.mu_correction));
    if (r.s_closed > zero_tolerance) {
      ++s.positive;
    } else if (r.s_closed < -zero_tolerance) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

}  // namespace pi2ch
