#pragma once

// Test-only helpers: trigonometric polynomials given by explicit coefficient
// lists, evaluated directly rather than through the library's transforms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pi2ch/fourier.hpp"

namespace pi2ch::test {

struct TrigPoly {
  // f(x) = a[0] + sum_{k>=1} a[k] cos(2 pi k x) + b[k] sin(2 pi k x)
  std::vector<double> a;
  std::vector<double> b;

  double operator()(double x) const {
    double s = a.empty() ? 0.0 : a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
      s += a[k] * std::cos(kTwoPi * k * x) + b[k] * std::sin(kTwoPi * k * x);
    }
    return s;
  }

  double slope(double x) const {
    double s = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
      const double w = kTwoPi * k;
      s += -w * a[k] * std::sin(w * x) + w * b[k] * std::cos(w * x);
    }
    return s;
  }

  /// Exact derivative, coefficient by coefficient.
  TrigPoly derived() const {
    TrigPoly d{std::vector<double>(a.size(), 0.0), std::vector<double>(b.size(), 0.0)};
    for (std::size_t k = 1; k < a.size(); ++k) {
      const double w = kTwoPi * k;
      d.a[k] = w * b[k];
      d.b[k] = -w * a[k];
    }
    return d;
  }

  /// this + s * o
  TrigPoly plus(double s, const TrigPoly& o) const {
    TrigPoly r = *this;
    const std::size_t m = std::max(a.size(), o.a.size());
    r.a.resize(m, 0.0);
    r.b.resize(m, 0.0);
    for (std::size_t k = 0; k < o.a.size(); ++k) {
      r.a[k] += s * o.a[k];
      r.b[k] += s * o.b[k];
    }
    return r;
  }

  PeriodicField on(const GridSpec& grid) const { return PeriodicField::sample(grid, *this); }
};

inline TrigPoly random_poly(std::mt19937_64& rng, int max_mode, bool zero_mean = false) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPoly p;
  p.a.assign(max_mode + 1, 0.0);
  p.b.assign(max_mode + 1, 0.0);
  for (int k = 0; k <= max_mode; ++k) {
    const double scale = 1.0 / (1.0 + k * k);
    p.a[k] = unit(rng) * scale;
    p.b[k] = k == 0 ? 0.0 : unit(rng) * scale;
  }
  if (zero_mean) p.a[0] = 0.0;
  return p;
}

/// Product of two trigonometric polynomials by explicit convolution of their
/// complex coefficients.
inline TrigPoly convolve(const TrigPoly& f, const TrigPoly& g) {
  const int mf = static_cast<int>(f.a.size()) - 1;
  const int mg = static_cast<int>(g.a.size()) - 1;
  auto coeff = [](const TrigPoly& p, int k) -> std::complex<double> {
    const int m = std::abs(k);
    if (m >= static_cast<int>(p.a.size())) return 0.0;
    if (m == 0) return p.a[0];
    // a cos + b sin = (a - i b)/2 e^{ikx} + (a + i b)/2 e^{-ikx}
    return k > 0 ? std::complex<double>(p.a[m], -p.b[m]) * 0.5
                 : std::complex<double>(p.a[m], p.b[m]) * 0.5;
  };
  const int m = mf + mg;
  TrigPoly out;
  out.a.assign(m + 1, 0.0);
  out.b.assign(m + 1, 0.0);
  for (int k = 0; k <= m; ++k) {
    std::complex<double> c = 0.0;
    for (int j = -mf; j <= mf; ++j) c += coeff(f, j) * coeff(g, k - j);
    if (k == 0) {
      out.a[0] = c.real();
    } else {
      out.a[k] = 2.0 * c.real();
      out.b[k] = -2.0 * c.imag();
    }
  }
  return out;
}

inline double max_abs_diff(const PeriodicField& a, const PeriodicField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace pi2ch::test
