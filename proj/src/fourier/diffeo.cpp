#include <algorithm>
#include <cmath>
#include <sstream>

#include "pi2ch/fourier.hpp"

namespace pi2ch {

namespace {

double wrap_unit(double x) { return x - std::floor(x); }

}  // namespace

// ---- Interpolant ----

Interpolant::Interpolant(const PeriodicField& f, InterpolationKind kind)
    : kind_(kind), n_(f.size()) {
  if (kind_ == InterpolationKind::trigonometric) {
    const Spectrum c = f.to_spectrum();
    const std::size_t nyq = n_ / 2;
    horner_.resize(nyq + 1);
    horner_slope_.resize(nyq + 1);
    for (std::size_t k = 0; k <= nyq; ++k) {
      const double weight = (k == 0 || k == nyq) ? 1.0 : 2.0;
      const std::size_t slot = nyq - k;
      horner_[slot] = weight * c[k];
      horner_slope_[slot] =
          k == nyq ? Complex(0.0) : weight * c[k] * Complex(0.0, kTwoPi * static_cast<double>(k));
    }
    return;
  }

  // Periodic cubic spline: the second-derivative system M_{j-1} + 4 M_j + M_{j+1}
  // = 6 (f_{j+1} - 2 f_j + f_{j-1}) / h^2 is circulant, so it diagonalizes in
  // Fourier space.
  samples_.assign(f.values().begin(), f.values().end());
  const double h = 1.0 / static_cast<double>(n_);
  Spectrum c = f.to_spectrum();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double cs = std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n_));
    c[k] *= 6.0 / (h * h) * (2.0 * cs - 2.0) / (4.0 + 2.0 * cs);
  }
  const PeriodicField m = PeriodicField::from_spectrum(f.grid(), c);
  curvature_.assign(m.values().begin(), m.values().end());
}

double Interpolant::value(double x) const { return value_and_slope(x).first; }

std::pair<double, double> Interpolant::value_and_slope(double x) const {
  const double xr = wrap_unit(x);
  if (kind_ == InterpolationKind::trigonometric) {
    const Complex z = std::polar(1.0, kTwoPi * xr);
    Complex p = horner_[0];
    Complex dp = horner_slope_[0];
    for (std::size_t i = 1; i < horner_.size(); ++i) {
      p = p * z + horner_[i];
      dp = dp * z + horner_slope_[i];
    }
    return {p.real(), dp.real()};
  }

  const double h = 1.0 / static_cast<double>(n_);
  const double t = xr * static_cast<double>(n_);
  std::size_t j = static_cast<std::size_t>(t);
  if (j >= n_) j = n_ - 1;
  const std::size_t j1 = (j + 1) % n_;
  const double b = (t - static_cast<double>(j)) * h;  // x - x_j
  const double a = h - b;                              // x_{j+1} - x
  const double mj = curvature_[j];
  const double mj1 = curvature_[j1];
  const double fj = samples_[j];
  const double fj1 = samples_[j1];
  const double value = mj * a * a * a / (6.0 * h) + mj1 * b * b * b / (6.0 * h) +
                       (fj - mj * h * h / 6.0) * a / h + (fj1 - mj1 * h * h / 6.0) * b / h;
  const double slope = -mj * a * a / (2.0 * h) + mj1 * b * b / (2.0 * h) + (fj1 - fj) / h -
                       (mj1 - mj) * h / 6.0;
  return {value, slope};
}

// ---- DiffeoMap ----

DiffeoMap::DiffeoMap(PeriodicField displacement)
    : displacement_(std::move(displacement)),
      jacobian_(derivative(displacement_) + PeriodicField::constant(displacement_.grid(), 1.0)),
      min_jacobian_(jacobian_.min()) {
  if (!(min_jacobian_ > 0.0)) {
    std::ostringstream msg;
    msg << "circle map is not orientation preserving (min phi_x = " << min_jacobian_ << ")";
    throw BreakdownError(msg.str(), min_jacobian_);
  }
}

DiffeoMap DiffeoMap::identity(const GridSpec& grid) { return DiffeoMap(PeriodicField::zeros(grid)); }

DiffeoMap DiffeoMap::rotation(const GridSpec& grid, double theta) {
  return DiffeoMap(PeriodicField::constant(grid, theta));
}

// ---- composition ----

PeriodicField compose(const PeriodicField& f, const DiffeoMap& phi, const CompositionOptions& options) {
  require_same_grid(f, phi.displacement());
  const Interpolant interp(f, options.kind);
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = interp.value(phi.position(j));
  return PeriodicField(f.grid(), std::move(out));
}

DiffeoMap compose(const DiffeoMap& outer, const DiffeoMap& inner, const CompositionOptions& options) {
  PeriodicField d = compose(outer.displacement(), inner, options);
  d += inner.displacement();
  return DiffeoMap(std::move(d));
}

DiffeoMap invert_diffeo(const DiffeoMap& phi, const InversionOptions& options) {
  if (phi.min_jacobian() < options.jacobian_floor) {
    std::ostringstream msg;
    msg << "cannot invert circle map: min phi_x = " << phi.min_jacobian() << " is below the floor "
        << options.jacobian_floor;
    throw BreakdownError(msg.str(), phi.min_jacobian());
  }
  const PeriodicField& disp = phi.displacement();
  const Interpolant interp(disp, options.kind);
  // The interpolant may overshoot the samples; pad the bracket generously.
  const double spread = disp.max() - disp.min();
  const double pad = 0.5 * spread + 1e-3;

  std::vector<double> out(disp.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double target = disp.grid().x(j);
    double lo = target - disp.max() - pad;
    double hi = target - disp.min() + pad;
    double y = target - disp[j];
    for (int it = 0; it < options.max_iterations; ++it) {
      const auto [d, slope] = interp.value_and_slope(y);
      const double g = y + d - target;
      if (std::abs(g) <= options.tolerance) break;
      if (g < 0.0) {
        lo = y;
      } else {
        hi = y;
      }
      const double jac = 1.0 + slope;
      double next = jac > 0.0 ? y - g / jac : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - y) <= 1e-16 * (1.0 + std::abs(y))) {
        y = next;
        break;
      }
      y = next;
    }
    out[j] = y - target;
  }
  return DiffeoMap(PeriodicField(disp.grid(), std::move(out)));
}

}  // namespace pi2ch
