#pragma once

// Named initial profiles and explicit Fourier-mode lists.

#include <optional>
#include <string>
#include <vector>

#include "pi2ch/fourier.hpp"

namespace pi2ch {

/// a cos(2 pi k x) + b sin(2 pi k x).
struct FourierMode {
  int k = 1;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// Profile presets:
///   zero         0
///   constant     offset
///   single-mode  offset + amplitude sin(2 pi (x - shift))
///   two-mode     offset + amplitude (sin(2 pi (x - shift)) + 1/2 cos(4 pi (x - shift)))
///   gaussian     offset + amplitude sum_m exp(-(x - center - m)^2 / (2 width^2))
///   modes        offset + sum over `modes`
///
/// Unset amplitudes default to 0.1. Unset offsets default to 1 for
/// "constant" and "two-mode" (a mean flow carrying the wave) and 0 otherwise.
struct ProfileSpec {
  std::string preset = "zero";
  std::optional<double> amplitude{};
  std::optional<double> offset{};
  double shift = 0.0;
  double center = 0.5;
  double width = 0.1;
  std::vector<FourierMode> modes{};
};

/// Names accepted in ProfileSpec::preset.
const std::vector<std::string>& profile_presets();

/// Throws DomainError for unknown presets, non-positive widths, negative
/// wavenumbers, or modes at or above the Nyquist index of `grid`.
void validate_profile(const ProfileSpec& spec, const GridSpec& grid);

PeriodicField make_profile(const GridSpec& grid, const ProfileSpec& spec);

/// Periodized Gaussian: images are summed until they fall below machine
/// precision relative to the peak.
double periodic_gaussian(double x, double center, double width);

}  // namespace pi2ch
