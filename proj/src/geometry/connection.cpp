#include "pi2ch/geometry.hpp"

namespace pi2ch {

namespace {

TangentPair central_difference(const VectorField& Y, const GroupPoint& p, const TangentPair& X, double h) {
  TangentPair diff = Y(chart_shift(p, X, h)) - Y(chart_shift(p, X, -h));
  diff *= 0.5 / h;
  return diff;
}

}  // namespace

GroupPoint chart_shift(const GroupPoint& p, const TangentPair& X, double eps) {
  PeriodicField d = p.phi.displacement();
  d.axpy(eps, X.v1());
  PeriodicField f = p.f;
  f.axpy(eps, X.v2());
  return GroupPoint(DiffeoMap(std::move(d)), f);
}

TangentPair directional_derivative(const VectorField& Y, const GroupPoint& p, const TangentPair& X,
                                   const NablaOptions& options) {
  if (!(options.fd_step > 0.0)) throw DomainError("directional_derivative: fd_step must be positive");
  const double h = options.fd_step;
  if (!options.richardson) return central_difference(Y, p, X, h);
  // Richardson: (4 D(h/2) - D(h)) / 3 cancels the h^2 term.
  TangentPair fine = central_difference(Y, p, X, 0.5 * h);
  TangentPair coarse = central_difference(Y, p, X, h);
  fine *= 4.0;
  fine -= coarse;
  fine *= 1.0 / 3.0;
  return fine;
}

TangentPair nabla(const VectorField& X, const VectorField& Y, const GroupPoint& p,
                  const NablaOptions& options) {
  const TangentPair x = X(p);
  const TangentPair y = Y(p);
  return directional_derivative(Y, p, x, options) - christoffel_at(p, x, y, options.inversion);
}

}  // namespace pi2ch
