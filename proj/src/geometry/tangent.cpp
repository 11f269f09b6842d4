#include <cmath>
#include <sstream>

#include "pi2ch/geometry.hpp"

namespace pi2ch {

namespace {

constexpr double kMeanTolerance = 1e-12;

}  // namespace

TangentPair::TangentPair(PeriodicField v1, PeriodicField v2) : v1_(std::move(v1)), v2_(std::move(v2)) {
  require_same_grid(v1_, v2_);
  const double m = mean(v2_);
  if (std::abs(m) > kMeanTolerance) {
    std::ostringstream msg;
    msg << "second component has mean " << m << "; projecting onto the zero-mean representative";
    warn(msg.str());
    v2_ = project_zero_mean(v2_);
  }
}

TangentPair TangentPair::from_representative(PeriodicField v1, const PeriodicField& v2) {
  require_same_grid(v1, v2);
  return TangentPair(Trusted{}, std::move(v1), project_zero_mean(v2));
}

TangentPair TangentPair::zeros(const GridSpec& grid) {
  return TangentPair(Trusted{}, PeriodicField::zeros(grid), PeriodicField::zeros(grid));
}

TangentPair& TangentPair::operator+=(const TangentPair& o) {
  v1_ += o.v1_;
  v2_ += o.v2_;
  return *this;
}

TangentPair& TangentPair::operator-=(const TangentPair& o) {
  v1_ -= o.v1_;
  v2_ -= o.v2_;
  return *this;
}

TangentPair& TangentPair::operator*=(double a) {
  v1_ *= a;
  v2_ *= a;
  return *this;
}

void require_same_grid(const TangentPair& a, const TangentPair& b) { require_same_grid(a.v1(), b.v1()); }

GroupPoint::GroupPoint(DiffeoMap phi_in, const PeriodicField& f_in)
    : phi(std::move(phi_in)), f(project_zero_mean(f_in)) {
  require_same_grid(phi.displacement(), f);
}

GroupPoint GroupPoint::identity(const GridSpec& grid) {
  return GroupPoint(DiffeoMap::identity(grid), PeriodicField::zeros(grid));
}

TangentPair x_derivative(const TangentPair& w) {
  return TangentPair::from_representative(derivative(w.v1()), derivative(w.v2()));
}

TangentPair scale_by(const TangentPair& w, const PeriodicField& s) {
  return TangentPair::from_representative(multiply(w.v1(), s), multiply(w.v2(), s));
}

TangentPair compose(const TangentPair& w, const DiffeoMap& phi, const CompositionOptions& options) {
  return TangentPair::from_representative(compose(w.v1(), phi, options), compose(w.v2(), phi, options));
}

double sup_norm(const TangentPair& w) { return std::max(w.v1().sup_norm(), w.v2().sup_norm()); }

}  // namespace pi2ch
