#pragma once

#include "pi2ch/errors.hpp"

namespace pi2ch {

/// Classical four-stage Runge-Kutta step.
///
/// `rhs(state)` returns a tendency supporting `axpy(a, other)`; the state type
/// has a clock member `t` and an ADL-visible `advance(state, tendency, h)`
/// returning state + h * tendency.
template <class State, class Rhs>
State step_rk4(const State& s, Rhs&& rhs, double dt) {
  if (!(dt > 0.0)) throw DomainError("step_rk4: dt must be positive");
  const auto k1 = rhs(s);
  const auto k2 = rhs(advance(s, k1, 0.5 * dt));
  const auto k3 = rhs(advance(s, k2, 0.5 * dt));
  const auto k4 = rhs(advance(s, k3, dt));
  auto k = k1;
  k.axpy(2.0, k2);
  k.axpy(2.0, k3);
  k.axpy(1.0, k4);
  State out = advance(s, k, dt / 6.0);
  out.t = s.t + dt;
  return out;
}

}  // namespace pi2ch
