#pragma once

// Geometry of the semidirect product Diff(S) x H/R carrying the pi-2CH flow:
// algebra bracket, inertia operator, right-invariant metric, Christoffel
// operator and the bilinear operator B.
//
// Classes in H/R are always stored through their zero-mean representative.

#include <cstdint>
#include <functional>
#include <random>

#include "pi2ch/fourier.hpp"

namespace pi2ch {

/// Element (v1, [v2]) of the Lie algebra H^s x H^{s-1}/R.
class TangentPair {
 public:
  /// Warns and projects when v2 does not have zero mean.
  TangentPair(PeriodicField v1, PeriodicField v2);
  /// Accepts any representative of the class [v2] and projects silently.
  static TangentPair from_representative(PeriodicField v1, const PeriodicField& v2);
  static TangentPair zeros(const GridSpec& grid);

  const PeriodicField& v1() const { return v1_; }
  const PeriodicField& v2() const { return v2_; }
  const GridSpec& grid() const { return v1_.grid(); }
  bool all_finite() const { return v1_.all_finite() && v2_.all_finite(); }

  TangentPair& operator+=(const TangentPair& o);
  TangentPair& operator-=(const TangentPair& o);
  TangentPair& operator*=(double a);

  friend TangentPair operator+(TangentPair a, const TangentPair& b) { return a += b; }
  friend TangentPair operator-(TangentPair a, const TangentPair& b) { return a -= b; }
  friend TangentPair operator*(double a, TangentPair u) { return u *= a; }
  friend TangentPair operator-(TangentPair u) { return u *= -1.0; }

 private:
  struct Trusted {};
  TangentPair(Trusted, PeriodicField v1, PeriodicField v2) : v1_(std::move(v1)), v2_(std::move(v2)) {}

  PeriodicField v1_;
  PeriodicField v2_;
};

/// Point (phi, [f]) of the group.
struct GroupPoint {
  GroupPoint(DiffeoMap phi, const PeriodicField& f);
  static GroupPoint identity(const GridSpec& grid);

  DiffeoMap phi;
  PeriodicField f;  // zero-mean representative
};

void require_same_grid(const TangentPair& a, const TangentPair& b);

// ---- componentwise helpers ----

/// (w1_x, [w2_x]).
TangentPair x_derivative(const TangentPair& w);
/// (w1 * s, [w2 * s]) for a scalar field s, dealiased.
TangentPair scale_by(const TangentPair& w, const PeriodicField& s);
/// (w1 o phi, [w2 o phi]).
TangentPair compose(const TangentPair& w, const DiffeoMap& phi, const CompositionOptions& options = {});
double sup_norm(const TangentPair& w);

// ---- algebra structure at the identity ----

/// [(u1,[u2]),(v1,[v2])] = (v1_x u1 - u1_x v1, [v2_x u1 - u2_x v1]).
TangentPair lie_bracket(const TangentPair& u, const TangentPair& v);

/// Inertia operator diag(A, pi) and its inverse.
TangentPair inertia_apply(const TangentPair& u);
TangentPair inertia_invert(const TangentPair& m);

/// <(u,[rho]),(v,[tau])> = int (u v + u_x v_x + rho tau) dx - mu(rho) mu(tau).
double metric(const TangentPair& u, const TangentPair& v);
double metric_norm(const TangentPair& u);

/// Right-invariant metric at p, evaluated through the phi_x-weighted integral
///   int ((U1 V1 + U2 V2) phi_x + U1_x V1_x / phi_x) - int U2 phi_x int V2 phi_x,
/// which needs no composition.
double metric_at(const GroupPoint& p, const TangentPair& U, const TangentPair& V,
                 double jacobian_floor = 1e-6);

/// Gamma(u,v) = -1/2 (A^{-1} d_x(2 u1 v1 + u1_x v1_x + pi(u2) pi(v2)),
///                    [u1_x pi(v2) + v1_x pi(u2)]).
TangentPair christoffel(const TangentPair& u, const TangentPair& v);

/// Right-invariant extension Gamma_p(U,V) = Gamma(U o phi^{-1}, V o phi^{-1}) o phi.
TangentPair christoffel_at(const GroupPoint& p, const TangentPair& U, const TangentPair& V,
                           const InversionOptions& options = {});

/// B(u,v) = (-A^{-1}(2 v1_x A u1 + v1 A u1_x + v2_x pi(u2)), -[(pi(u2) v1)_x]),
/// the metric adjoint of the bracket: <B(u,v), w> = <u, [v,w]>.
TangentPair bilinear_b(const TangentPair& u, const TangentPair& v);

// ---- identity residuals ----

/// Metric norm of Gamma(u,v) - 1/2[((u1 v1)_x, [u2_x v1 + v2_x u1]) + B(u,v) + B(v,u)].
double gamma_decomposition_residual(const TangentPair& u, const TangentPair& v);

/// |six-term sum| under the L2 pairing whose vanishing is equivalent to
/// compatibility of the metric with the connection.
double compatibility_residual(const TangentPair& u, const TangentPair& v, const TangentPair& w);

// ---- affine connection in the flat chart ----

/// A vector field on the group, given in the chart (phi, f) -> (id + d, f).
using VectorField = std::function<TangentPair(const GroupPoint&)>;

struct NablaOptions {
  double fd_step = 1e-4;
  bool richardson = false;
  InversionOptions inversion{};
};

/// p + eps X in the flat chart.
GroupPoint chart_shift(const GroupPoint& p, const TangentPair& X, double eps);

/// DY(p) . X by central differences along X in the flat chart.
TangentPair directional_derivative(const VectorField& Y, const GroupPoint& p, const TangentPair& X,
                                   const NablaOptions& options = {});

/// nabla_X Y (p) = DY(p) . X(p) - Gamma_p(X(p), Y(p)).
TangentPair nabla(const VectorField& X, const VectorField& Y, const GroupPoint& p,
                  const NablaOptions& options = {});

// ---- random band-limited test data ----

/// Generator for trial `index` of a suite seeded with `seed`.
std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t index);

/// Modes |k| <= max_mode with cos/sin coefficients uniform in [-1, 1] scaled by
/// 1/(1 + k^2).
PeriodicField random_band_limited(const GridSpec& grid, int max_mode, std::mt19937_64& rng,
                                  bool zero_mean = false);
TangentPair random_tangent(const GridSpec& grid, int max_mode, std::mt19937_64& rng);

}  // namespace pi2ch
