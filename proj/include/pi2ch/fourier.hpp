#pragma once

// Spectral calculus on the unit circle S = R/Z.
//
// Fields are stored by their samples at x_j = j/n. The spectral view uses the
// normalized coefficients c_k = (1/n) sum_j f_j exp(-2 pi i k x_j), k = 0..n/2,
// so that f(x) = sum_{|k| <= n/2} c_k exp(2 pi i k x) with c_{-k} = conj(c_k)
// and the Nyquist mode counted once.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pi2ch/errors.hpp"

namespace pi2ch {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

struct Fraction {
  long num = 2;
  long den = 3;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Uniform discretization of [0, 1). n must be even and >= 16; the dealias
/// fraction must lie in (0, 1].
class GridSpec {
 public:
  explicit GridSpec(std::size_t n, Fraction dealias_fraction = {});

  std::size_t n() const { return n_; }
  const Fraction& dealias_fraction() const { return dealias_; }
  /// Highest wavenumber kept after a product.
  std::size_t dealias_cutoff() const { return cutoff_; }
  std::size_t nyquist() const { return n_ / 2; }
  double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n_); }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n_ == b.n_ && a.dealias_.num * b.dealias_.den == b.dealias_.num * a.dealias_.den;
  }

 private:
  std::size_t n_;
  Fraction dealias_;
  std::size_t cutoff_;
};

class PeriodicField {
 public:
  PeriodicField(const GridSpec& grid, std::vector<double> values);

  static PeriodicField zeros(const GridSpec& grid);
  static PeriodicField constant(const GridSpec& grid, double c);
  static PeriodicField from_spectrum(const GridSpec& grid, std::span<const Complex> coeffs);

  template <class F>
  static PeriodicField sample(const GridSpec& grid, F&& f) {
    std::vector<double> v(grid.n());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return PeriodicField(grid, std::move(v));
  }

  Spectrum to_spectrum() const;

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  double sup_norm() const;
  double min() const;
  double max() const;
  bool all_finite() const;

  PeriodicField& operator+=(const PeriodicField& o);
  PeriodicField& operator-=(const PeriodicField& o);
  PeriodicField& operator*=(double a);
  /// this += a * o
  PeriodicField& axpy(double a, const PeriodicField& o);

  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
  friend PeriodicField operator*(double a, PeriodicField f) { return f *= a; }
  friend PeriodicField operator*(PeriodicField f, double a) { return f *= a; }
  friend PeriodicField operator-(PeriodicField f) { return f *= -1.0; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

void require_same_grid(const PeriodicField& a, const PeriodicField& b);

/// Orientation-preserving circle map phi(x) = x + displacement(x).
/// Construction rejects maps whose grid Jacobian is not strictly positive.
class DiffeoMap {
 public:
  explicit DiffeoMap(PeriodicField displacement);

  static DiffeoMap identity(const GridSpec& grid);
  static DiffeoMap rotation(const GridSpec& grid, double theta);

  const GridSpec& grid() const { return displacement_.grid(); }
  const PeriodicField& displacement() const { return displacement_; }
  /// phi_x sampled on the grid.
  const PeriodicField& jacobian() const { return jacobian_; }
  double min_jacobian() const { return min_jacobian_; }
  /// phi(x_j) (not reduced mod 1).
  double position(std::size_t j) const { return grid().x(j) + displacement_[j]; }

 private:
  PeriodicField displacement_;
  PeriodicField jacobian_;
  double min_jacobian_;
};

enum class InterpolationKind { trigonometric, cubic_spline };

/// Off-grid evaluation of a periodic field. The trigonometric kind evaluates
/// the trigonometric interpolant of the samples; cubic_spline uses the
/// periodic C2 cubic spline through them.
class Interpolant {
 public:
  explicit Interpolant(const PeriodicField& f,
                       InterpolationKind kind = InterpolationKind::trigonometric);

  double value(double x) const;
  /// Value and first derivative at x.
  std::pair<double, double> value_and_slope(double x) const;

 private:
  InterpolationKind kind_;
  std::size_t n_;
  // trigonometric: weighted coefficients, highest mode first for Horner.
  std::vector<Complex> horner_;
  std::vector<Complex> horner_slope_;
  // cubic spline: samples and second derivatives.
  std::vector<double> samples_;
  std::vector<double> curvature_;
};

// ---- Fourier multipliers and projections ----

PeriodicField derivative(const PeriodicField& f);
/// A = 1 - d^2/dx^2.
PeriodicField apply_helmholtz(const PeriodicField& u);
/// A^{-1}.
PeriodicField invert_helmholtz(const PeriodicField& w);
/// Fused A^{-1} d/dx.
PeriodicField helmholtz_solve_derivative(const PeriodicField& w);

/// Integral over one period (the k = 0 coefficient).
double mean(const PeriodicField& f);
PeriodicField project_zero_mean(const PeriodicField& f);
/// Trapezoid approximation of int_0^1 f g dx.
double l2_inner(const PeriodicField& f, const PeriodicField& g);

/// Pointwise product followed by zeroing every mode above the dealias cutoff.
PeriodicField multiply(const PeriodicField& f, const PeriodicField& g);
/// Zero every mode above the dealias cutoff.
PeriodicField dealias(const PeriodicField& f);

/// (sum_k (1 + (2 pi k)^2)^s |c_k|^2)^{1/2}, real-coefficient convention, so
/// s = 0 gives the L2 norm.
double sobolev_norm(const PeriodicField& f, double s);

// ---- Circle maps ----

struct CompositionOptions {
  InterpolationKind kind = InterpolationKind::trigonometric;
};

/// Samples of f(phi(x_j)).
PeriodicField compose(const PeriodicField& f, const DiffeoMap& phi,
                      const CompositionOptions& options = {});
/// outer o inner.
DiffeoMap compose(const DiffeoMap& outer, const DiffeoMap& inner,
                  const CompositionOptions& options = {});

struct InversionOptions {
  double jacobian_floor = 1e-6;
  double tolerance = 1e-14;
  int max_iterations = 100;
  InterpolationKind kind = InterpolationKind::trigonometric;
};

/// psi with phi(psi(x_j)) = x_j. Throws BreakdownError when min phi_x is below
/// the configured floor.
DiffeoMap invert_diffeo(const DiffeoMap& phi, const InversionOptions& options = {});

}  // namespace pi2ch
