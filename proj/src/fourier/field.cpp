#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "pi2ch/fourier.hpp"
#include "transform.hpp"

namespace pi2ch {

namespace {

WarningSink g_warning_sink = nullptr;

template <class Multiplier>
PeriodicField apply_multiplier(const PeriodicField& f, Multiplier&& m) {
  Spectrum c = f.to_spectrum();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m(k);
  return PeriodicField::from_spectrum(f.grid(), c);
}

double wavenumber(std::size_t k) { return kTwoPi * static_cast<double>(k); }

}  // namespace

void set_warning_sink(WarningSink sink) { g_warning_sink = sink; }

void warn(const std::string& message) {
  if (g_warning_sink) {
    g_warning_sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

// ---- GridSpec ----

GridSpec::GridSpec(std::size_t n, Fraction dealias_fraction) : n_(n), dealias_(dealias_fraction) {
  if (n < 16 || n % 2 != 0) {
    throw DomainError("grid size n must be even and >= 16 (got " + std::to_string(n) + ")");
  }
  if (dealias_.den <= 0 || dealias_.num <= 0 || dealias_.num > dealias_.den) {
    throw DomainError("dealias_fraction must lie in (0, 1]");
  }
  cutoff_ = static_cast<std::size_t>(dealias_.num) * n_ / (2 * static_cast<std::size_t>(dealias_.den));
}

// ---- PeriodicField ----

PeriodicField::PeriodicField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) {
    throw DomainError("PeriodicField: expected " + std::to_string(grid_.n()) + " samples, got " +
                      std::to_string(values_.size()));
  }
}

PeriodicField PeriodicField::zeros(const GridSpec& grid) {
  return PeriodicField(grid, std::vector<double>(grid.n(), 0.0));
}

PeriodicField PeriodicField::constant(const GridSpec& grid, double c) {
  return PeriodicField(grid, std::vector<double>(grid.n(), c));
}

PeriodicField PeriodicField::from_spectrum(const GridSpec& grid, std::span<const Complex> coeffs) {
  return PeriodicField(grid, detail::inverse_transform(coeffs, grid.n()));
}

Spectrum PeriodicField::to_spectrum() const { return detail::forward_transform(values_); }

double PeriodicField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PeriodicField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double PeriodicField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool PeriodicField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) { return axpy(1.0, o); }
PeriodicField& PeriodicField::operator-=(const PeriodicField& o) { return axpy(-1.0, o); }

PeriodicField& PeriodicField::operator*=(double a) {
  for (double& v : values_) v *= a;
  return *this;
}

PeriodicField& PeriodicField::axpy(double a, const PeriodicField& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += a * o.values_[j];
  return *this;
}

void require_same_grid(const PeriodicField& a, const PeriodicField& b) {
  if (!(a.grid() == b.grid())) {
    throw GridMismatchError("fields live on different grids (n = " + std::to_string(a.grid().n()) +
                            " vs " + std::to_string(b.grid().n()) + ")");
  }
}

// ---- multipliers ----

PeriodicField derivative(const PeriodicField& f) {
  const std::size_t nyq = f.grid().nyquist();
  return apply_multiplier(f, [nyq](std::size_t k) {
    return k == nyq ? Complex(0.0) : Complex(0.0, wavenumber(k));
  });
}

PeriodicField apply_helmholtz(const PeriodicField& u) {
  return apply_multiplier(u, [](std::size_t k) {
    const double w = wavenumber(k);
    return Complex(1.0 + w * w);
  });
}

PeriodicField invert_helmholtz(const PeriodicField& w) {
  return apply_multiplier(w, [](std::size_t k) {
    const double q = wavenumber(k);
    return Complex(1.0 / (1.0 + q * q));
  });
}

PeriodicField helmholtz_solve_derivative(const PeriodicField& w) {
  const std::size_t nyq = w.grid().nyquist();
  return apply_multiplier(w, [nyq](std::size_t k) {
    if (k == nyq) return Complex(0.0);
    const double q = wavenumber(k);
    return Complex(0.0, q / (1.0 + q * q));
  });
}

double mean(const PeriodicField& f) {
  const auto v = f.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

PeriodicField project_zero_mean(const PeriodicField& f) {
  PeriodicField out = f;
  const double m = mean(f);
  for (double& v : out.values()) v -= m;
  return out;
}

double l2_inner(const PeriodicField& f, const PeriodicField& g) {
  require_same_grid(f, g);
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return s / static_cast<double>(f.size());
}

PeriodicField dealias(const PeriodicField& f) {
  const std::size_t cutoff = f.grid().dealias_cutoff();
  if (cutoff >= f.grid().nyquist()) return f;
  Spectrum c = f.to_spectrum();
  for (std::size_t k = cutoff + 1; k < c.size(); ++k) c[k] = 0.0;
  return PeriodicField::from_spectrum(f.grid(), c);
}

PeriodicField multiply(const PeriodicField& f, const PeriodicField& g) {
  require_same_grid(f, g);
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * g[j];
  return dealias(PeriodicField(f.grid(), std::move(v)));
}

double sobolev_norm(const PeriodicField& f, double s) {
  if (s < 0.0) throw DomainError("sobolev_norm: order s must be >= 0");
  const Spectrum c = f.to_spectrum();
  const std::size_t nyq = f.grid().nyquist();
  double total = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double q = wavenumber(k);
    const double weight = (k == 0 || k == nyq) ? 1.0 : 2.0;
    total += weight * std::pow(1.0 + q * q, s) * std::norm(c[k]);
  }
  return std::sqrt(total);
}

}  // namespace pi2ch
