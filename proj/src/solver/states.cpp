#include <algorithm>
#include <cmath>

#include "pi2ch/solver.hpp"

namespace pi2ch {

EulerianState EulerianState::from_density(double t, PeriodicField u, const PeriodicField& rho) {
  require_same_grid(u, rho);
  return {t, std::move(u), project_zero_mean(rho)};
}

EulerianTendency& EulerianTendency::axpy(double a, const EulerianTendency& o) {
  du.axpy(a, o.du);
  dr.axpy(a, o.dr);
  return *this;
}

EulerianState advance(const EulerianState& s, const EulerianTendency& k, double h) {
  EulerianState out = s;
  out.t += h;
  out.u.axpy(h, k.du);
  out.r.axpy(h, k.dr);
  return out;
}

LagrangianState LagrangianState::at_identity(const TangentPair& u0) {
  const GridSpec& g = u0.grid();
  return {0.0, DiffeoMap::identity(g), PeriodicField::zeros(g), u0.v1(), u0.v2()};
}

LagrangianTendency& LagrangianTendency::axpy(double a, const LagrangianTendency& o) {
  d_displacement.axpy(a, o.d_displacement);
  d_f.axpy(a, o.d_f);
  d_phi_t.axpy(a, o.d_phi_t);
  d_f_t.axpy(a, o.d_f_t);
  return *this;
}

LagrangianState advance(const LagrangianState& s, const LagrangianTendency& k, double h) {
  PeriodicField disp = s.phi.displacement();
  disp.axpy(h, k.d_displacement);
  PeriodicField f = s.f;
  f.axpy(h, k.d_f);
  PeriodicField phi_t = s.phi_t;
  phi_t.axpy(h, k.d_phi_t);
  PeriodicField f_t = s.f_t;
  f_t.axpy(h, k.d_f_t);
  return {s.t + h, DiffeoMap(std::move(disp)), project_zero_mean(f), std::move(phi_t), std::move(f_t)};
}

std::string to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::completed:
      return "completed";
    case HaltReason::wave_breaking:
      return "wave_breaking";
    case HaltReason::instability:
      return "instability";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time.dt must be a positive finite number");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("time.t_end must be finite and >= 0");
  if (!(min_phix_floor > 0.0) || min_phix_floor >= 1.0)
    throw DomainError("solver.min_phix_floor must lie in (0, 1)");
  if (!(field_ceiling > 0.0)) throw DomainError("solver.field_ceiling must be positive");
  if (snapshot_stride < 1) throw DomainError("time.snapshot_stride must be >= 1");
  if (diagnostics_stride < 1) throw DomainError("solver.diagnostics_stride must be >= 1");
}

long SolverConfig::step_count() const {
  if (t_end == 0.0) return 0;
  return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

double Trajectory::energy_drift() const {
  if (diagnostics.empty()) return 0.0;
  const double e0 = diagnostics.front().energy;
  double drift = 0.0;
  for (const auto& d : diagnostics) drift = std::max(drift, std::abs(d.energy - e0));
  return e0 > 0.0 ? drift / e0 : drift;
}

double Trajectory::max_m1_residual() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.m1_residual);
  return m;
}

double Trajectory::max_m2_residual() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.m2_residual);
  return m;
}

double Trajectory::max_abs_mean_r() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, std::abs(d.mean_r));
  return m;
}

double Trajectory::min_phi_x() const {
  double m = 1.0;
  for (const auto& d : diagnostics) m = std::min(m, d.min_phi_x);
  return m;
}

}  // namespace pi2ch
