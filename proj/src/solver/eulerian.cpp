#include <algorithm>
#include <cmath>
#include <sstream>

#include "pi2ch/solver.hpp"
#include "schedule.hpp"

namespace pi2ch {

EulerianTendency eulerian_rhs(const EulerianState& s, bool density_coupling) {
  require_same_grid(s.u, s.r);
  const PeriodicField ux = derivative(s.u);
  PeriodicField source = 2.0 * multiply(s.u, s.u) + multiply(ux, ux);
  if (density_coupling) source += multiply(s.r, s.r);
  PeriodicField du = -multiply(s.u, ux);
  du.axpy(-0.5, helmholtz_solve_derivative(source));
  PeriodicField dr = density_coupling ? -derivative(multiply(s.r, s.u)) : PeriodicField::zeros(s.u.grid());
  return {std::move(du), std::move(dr)};
}

namespace {

// Eulerian fields plus the characteristic map: phi = id + displacement with
// phi_t = u o phi and f_t = r o phi.
struct FlowState {
  double t;
  EulerianState fields;  // clock kept in t
  PeriodicField displacement;
  PeriodicField f;
};

struct FlowTendency {
  EulerianTendency fields;
  PeriodicField d_displacement;
  PeriodicField d_f;

  FlowTendency& axpy(double a, const FlowTendency& o) {
    fields.axpy(a, o.fields);
    d_displacement.axpy(a, o.d_displacement);
    d_f.axpy(a, o.d_f);
    return *this;
  }
};

FlowState advance(const FlowState& s, const FlowTendency& k, double h) {
  FlowState out{s.t + h, pi2ch::advance(s.fields, k.fields, h), s.displacement, s.f};
  out.displacement.axpy(h, k.d_displacement);
  out.f.axpy(h, k.d_f);
  return out;
}

PeriodicField along_characteristics(const PeriodicField& field, const PeriodicField& displacement,
                                    InterpolationKind kind) {
  const Interpolant interp(field, kind);
  const GridSpec& g = field.grid();
  std::vector<double> out(g.n());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = interp.value(g.x(j) + displacement[j]);
  return PeriodicField(g, std::move(out));
}

DiagnosticsRecord flow_diagnostics(const FlowState& s, const PeriodicField& m0, const PeriodicField& r0,
                                   InterpolationKind kind) {
  const GridSpec& g = m0.grid();
  const PeriodicField& u = s.fields.u;
  const PeriodicField& r = s.fields.r;
  const PeriodicField phi_x = PeriodicField::constant(g, 1.0) + derivative(s.displacement);
  const PeriodicField f_x = derivative(s.f);
  const PeriodicField m_phi = along_characteristics(apply_helmholtz(u), s.displacement, kind);
  const PeriodicField r_phi = along_characteristics(r, s.displacement, kind);

  DiagnosticsRecord d;
  d.t = s.t;
  d.energy = metric(TangentPair::from_representative(u, r), TangentPair::from_representative(u, r));
  d.mean_r = mean(r);
  d.min_phi_x = phi_x.min();
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double m1 = m_phi[j] * phi_x[j] * phi_x[j] + r_phi[j] * f_x[j] * phi_x[j] - m0[j];
    const double m2 = r_phi[j] * phi_x[j] - r0[j];
    d.m1_residual = std::max(d.m1_residual, std::abs(m1));
    d.m2_residual = std::max(d.m2_residual, std::abs(m2));
  }
  return d;
}

}  // namespace

Trajectory integrate_eulerian(const EulerianState& s0, const SolverConfig& cfg) {
  cfg.validate();
  require_same_grid(s0.u, s0.r);
  if (!(s0.u.grid() == cfg.grid)) throw GridMismatchError("integrate_eulerian: state grid differs from config grid");
  if (std::abs(mean(s0.r)) > 1e-12) throw DomainError("integrate_eulerian: r must have zero mean");

  const GridSpec& g = cfg.grid;
  const InterpolationKind kind = cfg.interpolation;
  const PeriodicField m0 = s0.momentum();
  const PeriodicField& r0 = s0.r;
  const bool coupled = cfg.density_coupling;

  auto rhs = [&](const FlowState& s) {
    return FlowTendency{eulerian_rhs(s.fields, coupled), along_characteristics(s.fields.u, s.displacement, kind),
                        along_characteristics(s.fields.r, s.displacement, kind)};
  };

  Trajectory traj;
  FlowState state{s0.t, s0, PeriodicField::zeros(g), PeriodicField::zeros(g)};
  const long steps = cfg.step_count();

  auto record = [&](long k) {
    if (detail::on_stride(k, steps, cfg.snapshot_stride))
      traj.snapshots.push_back({state.fields.t, state.fields.u, state.fields.r});
    if (detail::on_stride(k, steps, cfg.diagnostics_stride))
      traj.diagnostics.push_back(flow_diagnostics(state, m0, r0, kind));
  };

  record(0);
  traj.halt_time = state.fields.t;
  for (long k = 0; k < steps; ++k) {
    const double h = detail::step_time(cfg, k + 1, steps) - detail::step_time(cfg, k, steps);
    FlowState next = step_rk4(state, rhs, h);
    next.t = detail::step_time(cfg, k + 1, steps);
    next.fields.t = next.t;

    if (detail::unstable(next.fields.u, cfg.field_ceiling) || detail::unstable(next.fields.r, cfg.field_ceiling)) {
      std::ostringstream msg;
      msg << "field sup-norm exceeded " << cfg.field_ceiling << " or became non-finite at t = " << next.fields.t;
      traj.halt = HaltReason::instability;
      traj.halt_detail = msg.str();
      if (traj.snapshots.back().t != state.fields.t)
        traj.snapshots.push_back({state.fields.t, state.fields.u, state.fields.r});
      return traj;
    }
    state = std::move(next);
    traj.halt_time = state.fields.t;

    const double min_phix = 1.0 + derivative(state.displacement).min();
    if (min_phix <= cfg.min_phix_floor) {
      std::ostringstream msg;
      msg << "min phi_x = " << min_phix << " reached the floor " << cfg.min_phix_floor << " at t = " << state.fields.t;
      traj.halt = HaltReason::wave_breaking;
      traj.halt_detail = msg.str();
      traj.snapshots.push_back({state.fields.t, state.fields.u, state.fields.r});
      traj.diagnostics.push_back(flow_diagnostics(state, m0, r0, kind));
      return traj;
    }
    record(k + 1);
  }
  return traj;
}

TangentPair default_perturbation(const GridSpec& grid) {
  auto v1 = PeriodicField::sample(grid, [](double x) { return std::cos(kTwoPi * x) + 0.5 * std::sin(2.0 * kTwoPi * x); });
  auto v2 = PeriodicField::sample(grid, [](double x) { return std::sin(kTwoPi * x); });
  return TangentPair::from_representative(std::move(v1), v2);
}

double smooth_dependence_probe(const TangentPair& u0, double eps, const SolverConfig& cfg,
                               const std::optional<TangentPair>& perturbation) {
  if (!(eps >= 0.0 && eps <= 0.1)) throw DomainError("smooth_dependence_probe: eps must lie in [0, 0.1]");
  if (eps == 0.0) return 0.0;
  const TangentPair delta = perturbation ? *perturbation : default_perturbation(u0.grid());
  require_same_grid(u0, delta);
  const TangentPair shifted = u0 + eps * delta;

  auto final_state = [&](const TangentPair& v) {
    Trajectory t = integrate_eulerian(EulerianState{0.0, v.v1(), v.v2()}, cfg);
    if (t.halt != HaltReason::completed)
      throw Error("smooth_dependence_probe: run halted (" + to_string(t.halt) + "): " + t.halt_detail);
    return t.snapshots.back();
  };
  const Snapshot a = final_state(u0);
  const Snapshot b = final_state(shifted);
  return std::max((a.u - b.u).sup_norm(), (a.r - b.r).sup_norm());
}

}  // namespace pi2ch
