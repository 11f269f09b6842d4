#include <algorithm>
#include <cmath>
#include <sstream>

#include "pi2ch/solver.hpp"
#include "schedule.hpp"

namespace pi2ch {

namespace {

void require_above_floor(const DiffeoMap& phi, double floor, const char* where) {
  if (phi.min_jacobian() <= floor) {
    std::ostringstream msg;
    msg << where << ": min phi_x = " << phi.min_jacobian() << " reached the floor " << floor;
    throw BreakdownError(msg.str(), phi.min_jacobian());
  }
}

}  // namespace

TangentPair lagrangian_rhs(const LagrangianState& s, double min_phix_floor, const InversionOptions& inversion) {
  require_above_floor(s.phi, min_phix_floor, "lagrangian_rhs");
  const TangentPair vel = s.velocity();
  return christoffel_at(s.point(), vel, vel, inversion);
}

EulerianState reconstruct_eulerian(const LagrangianState& s, double min_phix_floor, InterpolationKind kind) {
  require_above_floor(s.phi, min_phix_floor, "reconstruct_eulerian");
  InversionOptions inv;
  inv.kind = kind;
  inv.jacobian_floor = std::min(inv.jacobian_floor, min_phix_floor);
  const DiffeoMap psi = invert_diffeo(s.phi, inv);
  const CompositionOptions comp{kind};
  return {s.t, compose(s.phi_t, psi, comp), project_zero_mean(compose(s.f_t, psi, comp))};
}

DiagnosticsRecord monitors(const LagrangianState& s, const PeriodicField& m0, const PeriodicField& r0) {
  require_same_grid(m0, s.phi_t);
  require_same_grid(r0, s.phi_t);
  const PeriodicField& phi_x = s.phi.jacobian();
  // u o phi = phi_t, u_x o phi = phi_tx / phi_x, u_xx o phi = (phi_tx / phi_x)_x / phi_x.
  const PeriodicField phi_tx = derivative(s.phi_t);
  PeriodicField ux_phi = phi_tx;
  for (std::size_t j = 0; j < ux_phi.size(); ++j) ux_phi[j] /= phi_x[j];
  const PeriodicField slope = derivative(ux_phi);
  // r o phi = f_t - int (f_t o phi^{-1}) = f_t - int f_t phi_x.
  const double r_mass = l2_inner(s.f_t, phi_x);
  const PeriodicField f_x = derivative(s.f);

  DiagnosticsRecord d;
  d.t = s.t;
  d.energy = metric_at(s.point(), s.velocity(), s.velocity(), 0.0);
  d.min_phi_x = s.phi.min_jacobian();
  double mass = 0.0;
  for (std::size_t j = 0; j < phi_x.size(); ++j) {
    const double m_phi = s.phi_t[j] - slope[j] / phi_x[j];
    const double r_phi = s.f_t[j] - r_mass;
    const double m1 = m_phi * phi_x[j] * phi_x[j] + r_phi * f_x[j] * phi_x[j] - m0[j];
    const double m2 = r_phi * phi_x[j] - r0[j];
    d.m1_residual = std::max(d.m1_residual, std::abs(m1));
    d.m2_residual = std::max(d.m2_residual, std::abs(m2));
    mass += r_phi * phi_x[j];
  }
  // int r dx = int (r o phi) phi_x dx.
  d.mean_r = mass / static_cast<double>(phi_x.size());
  return d;
}

LagrangianRun integrate_lagrangian(const TangentPair& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw GridMismatchError("integrate_lagrangian: velocity grid differs from config grid");

  InversionOptions inv;
  inv.kind = cfg.interpolation;
  inv.jacobian_floor = std::min(inv.jacobian_floor, cfg.min_phix_floor);
  const PeriodicField m0 = apply_helmholtz(u0.v1());
  const PeriodicField& r0 = u0.v2();

  auto rhs = [&](const LagrangianState& s) {
    TangentPair acc = lagrangian_rhs(s, cfg.min_phix_floor, inv);
    return LagrangianTendency{s.phi_t, s.f_t, acc.v1(), acc.v2()};
  };

  LagrangianRun run{Trajectory{}, LagrangianState::at_identity(u0)};
  Trajectory& traj = run.trajectory;
  LagrangianState& state = run.final_state;
  const long steps = cfg.step_count();

  auto snapshot = [&] {
    const EulerianState e = reconstruct_eulerian(state, cfg.min_phix_floor, cfg.interpolation);
    traj.snapshots.push_back({state.t, e.u, e.r});
  };
  auto record = [&](long k) {
    if (detail::on_stride(k, steps, cfg.snapshot_stride)) snapshot();
    if (detail::on_stride(k, steps, cfg.diagnostics_stride)) traj.diagnostics.push_back(monitors(state, m0, r0));
  };
  auto halt = [&](HaltReason reason, std::string detail) {
    traj.halt = reason;
    traj.halt_detail = std::move(detail);
  };

  record(0);
  traj.halt_time = state.t;
  for (long k = 0; k < steps; ++k) {
    const double t_next = detail::step_time(cfg, k + 1, steps);
    const double h = t_next - detail::step_time(cfg, k, steps);
    std::optional<LagrangianState> next;
    try {
      next = step_rk4(state, rhs, h);
    } catch (const BreakdownError& e) {
      halt(HaltReason::wave_breaking, std::string(e.what()) + " during the step from t = " + std::to_string(state.t));
      return run;
    }
    next->t = t_next;
    if (detail::unstable(next->phi_t, cfg.field_ceiling) || detail::unstable(next->f_t, cfg.field_ceiling) ||
        !next->phi.displacement().all_finite() || !next->f.all_finite()) {
      std::ostringstream msg;
      msg << "field sup-norm exceeded " << cfg.field_ceiling << " or became non-finite at t = " << t_next;
      halt(HaltReason::instability, msg.str());
      return run;
    }
    state = std::move(*next);
    traj.halt_time = state.t;

    if (state.phi.min_jacobian() <= cfg.min_phix_floor) {
      std::ostringstream msg;
      msg << "min phi_x = " << state.phi.min_jacobian() << " reached the floor " << cfg.min_phix_floor
          << " at t = " << state.t;
      halt(HaltReason::wave_breaking, msg.str());
      traj.diagnostics.push_back(monitors(state, m0, r0));
      return run;
    }
    record(k + 1);
  }
  return run;
}

}  // namespace pi2ch
