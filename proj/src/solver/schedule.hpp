#pragma once

#include "pi2ch/solver.hpp"

namespace pi2ch::detail {

// Step k starts at k * dt; the final step ends exactly at t_end.
inline double step_time(const SolverConfig& cfg, long k, long steps) {
  return k >= steps ? cfg.t_end : static_cast<double>(k) * cfg.dt;
}

inline bool on_stride(long k, long steps, int stride) { return k == 0 || k == steps || k % stride == 0; }

inline bool unstable(const PeriodicField& f, double ceiling) { return !f.all_finite() || f.sup_norm() > ceiling; }

}  // namespace pi2ch::detail
