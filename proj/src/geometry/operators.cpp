#include <cmath>
#include <sstream>

#include "pi2ch/geometry.hpp"

namespace pi2ch {

TangentPair lie_bracket(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  PeriodicField first = multiply(derivative(v.v1()), u.v1()) - multiply(derivative(u.v1()), v.v1());
  PeriodicField second = multiply(derivative(v.v2()), u.v1()) - multiply(derivative(u.v2()), v.v1());
  return TangentPair::from_representative(std::move(first), second);
}

TangentPair inertia_apply(const TangentPair& u) {
  return TangentPair::from_representative(apply_helmholtz(u.v1()), u.v2());
}

TangentPair inertia_invert(const TangentPair& m) {
  return TangentPair::from_representative(invert_helmholtz(m.v1()), m.v2());
}

double metric(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  const PeriodicField u1x = derivative(u.v1());
  const PeriodicField v1x = derivative(v.v1());
  return l2_inner(u.v1(), v.v1()) + l2_inner(u1x, v1x) + l2_inner(u.v2(), v.v2()) -
         mean(u.v2()) * mean(v.v2());
}

double metric_norm(const TangentPair& u) { return std::sqrt(std::max(metric(u, u), 0.0)); }

double metric_at(const GroupPoint& p, const TangentPair& U, const TangentPair& V, double jacobian_floor) {
  require_same_grid(U, V);
  require_same_grid(U.v1(), p.phi.displacement());
  const PeriodicField& jac = p.phi.jacobian();
  if (p.phi.min_jacobian() < jacobian_floor) {
    std::ostringstream msg;
    msg << "metric_at: min phi_x = " << p.phi.min_jacobian() << " below floor " << jacobian_floor;
    throw BreakdownError(msg.str(), p.phi.min_jacobian());
  }
  const PeriodicField U1x = derivative(U.v1());
  const PeriodicField V1x = derivative(V.v1());
  const std::size_t n = jac.size();
  double weighted = 0.0;
  double u2_mass = 0.0;
  double v2_mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    weighted += (U.v1()[j] * V.v1()[j] + U.v2()[j] * V.v2()[j]) * jac[j] + U1x[j] * V1x[j] / jac[j];
    u2_mass += U.v2()[j] * jac[j];
    v2_mass += V.v2()[j] * jac[j];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return weighted * inv_n - (u2_mass * inv_n) * (v2_mass * inv_n);
}

TangentPair christoffel(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  const PeriodicField u1x = derivative(u.v1());
  const PeriodicField v1x = derivative(v.v1());
  PeriodicField source = 2.0 * multiply(u.v1(), v.v1());
  source += multiply(u1x, v1x);
  source += multiply(u.v2(), v.v2());
  PeriodicField first = -0.5 * helmholtz_solve_derivative(source);
  PeriodicField second = -0.5 * (multiply(u1x, v.v2()) + multiply(v1x, u.v2()));
  return TangentPair::from_representative(std::move(first), second);
}

TangentPair christoffel_at(const GroupPoint& p, const TangentPair& U, const TangentPair& V,
                           const InversionOptions& options) {
  require_same_grid(U, V);
  const DiffeoMap inverse = invert_diffeo(p.phi, options);
  const CompositionOptions comp{options.kind};
  const TangentPair u = compose(U, inverse, comp);
  const TangentPair v = (&U == &V) ? u : compose(V, inverse, comp);
  return compose(christoffel(u, v), p.phi, comp);
}

TangentPair bilinear_b(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  const PeriodicField au1 = apply_helmholtz(u.v1());
  const PeriodicField au1x = derivative(au1);
  PeriodicField inner = 2.0 * multiply(derivative(v.v1()), au1);
  inner += multiply(v.v1(), au1x);
  inner += multiply(derivative(v.v2()), u.v2());
  PeriodicField first = -invert_helmholtz(inner);
  PeriodicField second = -derivative(multiply(u.v2(), v.v1()));
  return TangentPair::from_representative(std::move(first), second);
}

double gamma_decomposition_residual(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  const PeriodicField transport1 = derivative(multiply(u.v1(), v.v1()));
  const PeriodicField transport2 =
      multiply(derivative(u.v2()), v.v1()) + multiply(derivative(v.v2()), u.v1());
  TangentPair rhs = TangentPair::from_representative(transport1, transport2);
  rhs += bilinear_b(u, v);
  rhs += bilinear_b(v, u);
  rhs *= 0.5;
  return metric_norm(christoffel(u, v) - rhs);
}

double compatibility_residual(const TangentPair& u, const TangentPair& v, const TangentPair& w) {
  require_same_grid(u, v);
  require_same_grid(u, w);
  const PeriodicField& u1 = u.v1();
  const PeriodicField& v1 = v.v1();
  const PeriodicField& w1 = w.v1();
  // B = pi on classes; the stored representatives already have zero mean.
  const PeriodicField pu2 = project_zero_mean(u.v2());
  const PeriodicField pv2 = project_zero_mean(v.v2());
  const PeriodicField pw2 = project_zero_mean(w.v2());
  const PeriodicField u1x = derivative(u1);

  const double t1 = l2_inner(multiply(derivative(v.v2()), u1), pw2);
  const double t2 = l2_inner(multiply(derivative(w.v2()), u1), pv2);
  const double t3 = l2_inner(0.5 * derivative(multiply(pv2, pu2)), w1);
  const double t4 = l2_inner(0.5 * derivative(multiply(pw2, pu2)), v1);
  const double t5 = l2_inner(0.5 * (multiply(derivative(v1), pu2) + multiply(u1x, pv2)), pw2);
  const double t6 = l2_inner(0.5 * (multiply(derivative(w1), pu2) + multiply(u1x, pw2)), pv2);
  return std::abs(t1 + t2 + t3 + t4 + t5 + t6);
}

}  // namespace pi2ch
