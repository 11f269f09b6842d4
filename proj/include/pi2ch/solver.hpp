#pragma once

// Time integration of the pi-2CH system, in Eulerian form on (u, [rho]) and as
// the geodesic equation on the group, with Eulerian reconstruction and the
// conservation-law monitors.

#include <optional>
#include <string>
#include <vector>

#include "pi2ch/geometry.hpp"
#include "pi2ch/rk4.hpp"

namespace pi2ch {

/// (u, r) with r the zero-mean representative of [rho].
struct EulerianState {
  double t = 0.0;
  PeriodicField u;
  PeriodicField r;

  /// Projects rho to its zero-mean representative.
  static EulerianState from_density(double t, PeriodicField u, const PeriodicField& rho);
  /// m = A u.
  PeriodicField momentum() const { return apply_helmholtz(u); }
};

struct EulerianTendency {
  PeriodicField du;
  PeriodicField dr;

  EulerianTendency& axpy(double a, const EulerianTendency& o);
};

EulerianState advance(const EulerianState& s, const EulerianTendency& k, double h);

/// Position on the group and velocity (phi_t, f_t).
struct LagrangianState {
  double t = 0.0;
  DiffeoMap phi;
  PeriodicField f;  // zero mean
  PeriodicField phi_t;
  PeriodicField f_t;

  /// (id, 0) moving with velocity u0.
  static LagrangianState at_identity(const TangentPair& u0);
  GroupPoint point() const { return GroupPoint(phi, f); }
  TangentPair velocity() const { return TangentPair::from_representative(phi_t, f_t); }
};

struct LagrangianTendency {
  PeriodicField d_displacement;
  PeriodicField d_f;
  PeriodicField d_phi_t;
  PeriodicField d_f_t;

  LagrangianTendency& axpy(double a, const LagrangianTendency& o);
};

/// Throws BreakdownError when the advanced map is not a diffeomorphism.
LagrangianState advance(const LagrangianState& s, const LagrangianTendency& k, double h);

enum class Scheme { rk4 };
enum class HaltReason { completed, wave_breaking, instability };

std::string to_string(HaltReason reason);

struct SolverConfig {
  GridSpec grid{256};
  double dt = 1e-3;
  double t_end = 0.5;
  Scheme scheme = Scheme::rk4;
  double min_phix_floor = 1e-4;
  /// Sup-norm above which a field is declared unstable.
  double field_ceiling = 1e6;
  /// Steps between snapshots; the initial and final states are always kept.
  int snapshot_stride = 50;
  /// Steps between diagnostics records; the final state is always recorded.
  int diagnostics_stride = 1;
  /// false drops every r-term from the Eulerian right-hand side.
  bool density_coupling = true;
  InterpolationKind interpolation = InterpolationKind::trigonometric;

  /// Throws DomainError naming the offending field.
  void validate() const;
  /// Number of steps to reach t_end; the last step is shortened if needed.
  long step_count() const;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double m1_residual = 0.0;
  double m2_residual = 0.0;
  double mean_r = 0.0;
  double min_phi_x = 1.0;
};

struct Snapshot {
  double t = 0.0;
  PeriodicField u;
  PeriodicField r;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  HaltReason halt = HaltReason::completed;
  /// Time of the last accepted state.
  double halt_time = 0.0;
  std::string halt_detail;

  /// max |E(t) - E(0)| / E(0), or the absolute drift when E(0) = 0.
  double energy_drift() const;
  double max_m1_residual() const;
  double max_m2_residual() const;
  double max_abs_mean_r() const;
  double min_phi_x() const;
};

/// du = -u u_x - 1/2 A^{-1} d_x (2u^2 + u_x^2 + r^2),  dr = -(r u)_x.
EulerianTendency eulerian_rhs(const EulerianState& s, bool density_coupling = true);

/// (phi_tt, f_tt) = Gamma_{(phi, f)}((phi_t, f_t), (phi_t, f_t)).
/// Throws BreakdownError when min phi_x <= floor.
TangentPair lagrangian_rhs(const LagrangianState& s, double min_phix_floor = 1e-4,
                           const InversionOptions& inversion = {});

/// Eulerian integration. The characteristics phi_t = u o phi, f_t = r o phi
/// are carried along so that the Lagrangian monitors apply to this run too.
Trajectory integrate_eulerian(const EulerianState& s0, const SolverConfig& cfg);

struct LagrangianRun {
  Trajectory trajectory;  // snapshots hold the reconstructed Eulerian fields
  LagrangianState final_state;
};

LagrangianRun integrate_lagrangian(const TangentPair& u0, const SolverConfig& cfg);

/// u = phi_t o phi^{-1},  r = pi(f_t o phi^{-1}).
EulerianState reconstruct_eulerian(const LagrangianState& s, double min_phix_floor = 1e-4,
                                   InterpolationKind kind = InterpolationKind::trigonometric);

/// Residuals of the two Lagrangian conservation laws against m0 = A u0 and
/// r0, the energy, mean of the reconstructed density and min phi_x.
/// Compositions with phi are expressed through the chain rule on the grid.
DiagnosticsRecord monitors(const LagrangianState& s, const PeriodicField& m0, const PeriodicField& r0);

/// Fixed band-limited perturbation used by the dependence probe.
TangentPair default_perturbation(const GridSpec& grid);

/// Sup-norm distance at t_end between the Eulerian solutions from u0 and
/// u0 + eps * perturbation. eps must lie in [0, 0.1].
double smooth_dependence_probe(const TangentPair& u0, double eps, const SolverConfig& cfg,
                               const std::optional<TangentPair>& perturbation = std::nullopt);

}  // namespace pi2ch
