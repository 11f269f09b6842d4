#include "pi2ch/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pi2ch {

const std::vector<std::string>& profile_presets() {
  static const std::vector<std::string> names{"zero", "constant", "single-mode", "two-mode", "gaussian", "modes"};
  return names;
}

void validate_profile(const ProfileSpec& spec, const GridSpec& grid) {
  const auto& names = profile_presets();
  if (std::find(names.begin(), names.end(), spec.preset) == names.end())
    throw DomainError("unknown preset \"" + spec.preset + "\"");
  for (double v : {spec.amplitude.value_or(0.0), spec.offset.value_or(0.0), spec.shift, spec.center, spec.width})
    if (!std::isfinite(v)) throw DomainError("profile parameters must be finite");
  if (spec.preset == "gaussian" && !(spec.width > 0.0)) throw DomainError("gaussian width must be positive");
  if (spec.preset == "modes") {
    for (const auto& m : spec.modes) {
      if (m.k < 0) throw DomainError("mode wavenumber must be >= 0");
      if (static_cast<std::size_t>(m.k) >= grid.nyquist())
        throw DomainError("mode wavenumber " + std::to_string(m.k) + " is not below n/2");
      if (!std::isfinite(m.cos_coeff) || !std::isfinite(m.sin_coeff))
        throw DomainError("mode coefficients must be finite");
    }
  } else if (!spec.modes.empty()) {
    throw DomainError("modes are only used with preset \"modes\"");
  }
}

double periodic_gaussian(double x, double center, double width) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double d = x - center - std::round(x - center);
  double sum = std::exp(-d * d / (2.0 * width * width));
  for (int m = 1;; ++m) {
    const double a = d + m;
    const double b = d - m;
    const double term = std::exp(-a * a / (2.0 * width * width)) + std::exp(-b * b / (2.0 * width * width));
    sum += term;
    if (term < eps * sum) break;
  }
  return sum;
}

PeriodicField make_profile(const GridSpec& grid, const ProfileSpec& spec) {
  validate_profile(spec, grid);
  const double a = spec.amplitude.value_or(0.1);
  const double c = spec.offset.value_or(spec.preset == "constant" || spec.preset == "two-mode" ? 1.0 : 0.0);
  const double s = spec.shift;
  if (spec.preset == "zero") return PeriodicField::zeros(grid);
  if (spec.preset == "constant") return PeriodicField::constant(grid, c);
  if (spec.preset == "single-mode")
    return PeriodicField::sample(grid, [&](double x) { return c + a * std::sin(kTwoPi * (x - s)); });
  if (spec.preset == "two-mode")
    return PeriodicField::sample(grid, [&](double x) {
      return c + a * (std::sin(kTwoPi * (x - s)) + 0.5 * std::cos(2.0 * kTwoPi * (x - s)));
    });
  if (spec.preset == "gaussian")
    return PeriodicField::sample(grid, [&](double x) { return c + a * periodic_gaussian(x, spec.center, spec.width); });
  return PeriodicField::sample(grid, [&](double x) {
    double v = c;
    for (const auto& m : spec.modes) {
      const double arg = kTwoPi * m.k * x;
      v += m.cos_coeff * std::cos(arg) + m.sin_coeff * std::sin(arg);
    }
    return v;
  });
}

}  // namespace pi2ch
