#include "pi2ch/curvature.hpp"

#include <cmath>

namespace pi2ch {

double CurvatureReport::relative_diff() const { return abs_diff / (1.0 + std::abs(s_direct)); }

TangentPair d1_gamma(const TangentPair& w, const TangentPair& u, const TangentPair& v) {
  require_same_grid(w, u);
  require_same_grid(w, v);
  const PeriodicField& v1 = v.v1();
  TangentPair out = scale_by(x_derivative(christoffel(w, u)), v1);
  out -= christoffel(scale_by(x_derivative(w), v1), u);
  out -= christoffel(scale_by(x_derivative(u), v1), w);
  return out;
}

TangentPair riemann(const TangentPair& u, const TangentPair& v, const TangentPair& w) {
  TangentPair out = d1_gamma(w, u, v);
  out -= d1_gamma(w, v, u);
  out += christoffel(christoffel(w, v), u);
  out -= christoffel(christoffel(w, u), v);
  return out;
}

double sectional_direct(const TangentPair& u, const TangentPair& v) { return metric(riemann(u, v, v), u); }

double mu_correction(const TangentPair& u, const TangentPair& v) {
  require_same_grid(u, v);
  const PeriodicField u1x = derivative(u.v1());
  const PeriodicField u2x = derivative(u.v2());
  const PeriodicField v1x = derivative(v.v1());
  const PeriodicField v2x = derivative(v.v2());
  const double a = l2_inner(u1x, v.v2());
  const double b = l2_inner(u2x, v.v1());
  const double c = l2_inner(u.v1(), u2x) * l2_inner(v1x, v.v2());
  const double d = l2_inner(u.v2(), v1x) * l2_inner(u.v1(), v2x);
  return a * a + b * b + c + d;
}

double gamma_part(const TangentPair& u, const TangentPair& v) {
  const TangentPair guv = christoffel(u, v);
  return metric(guv, guv) - metric(christoffel(u, u), christoffel(v, v));
}

CurvatureReport sectional_closed(const TangentPair& u, const TangentPair& v) {
  CurvatureReport r;
  r.gamma_part = gamma_part(u, v);
  r.mu_correction = mu_correction(u, v);
  r.s_closed = r.gamma_part + r.mu_correction;
  r.s_direct = sectional_direct(u, v);
  r.abs_diff = std::abs(r.s_closed - r.s_direct);
  return r;
}

std::pair<TangentPair, TangentPair> counterexample_pair(const GridSpec& grid) {
  const auto zero = PeriodicField::zeros(grid);
  auto u = TangentPair::from_representative(
      PeriodicField::sample(grid, [](double x) { return std::sin(kTwoPi * x); }), zero);
  auto v = TangentPair::from_representative(
      zero, PeriodicField::sample(grid, [](double x) { return std::cos(kTwoPi * x); }));
  return {std::move(u), std::move(v)};
}

}  // namespace pi2ch
