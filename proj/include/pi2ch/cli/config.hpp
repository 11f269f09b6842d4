#pragma once

// Run configuration: a JSON key/value tree, overridable from the command line.
// Every key is optional; unknown keys are rejected.
//
//   grid      { n, dealias_fraction ("2/3" or [2, 3]) }
//   time      { dt, t_end, snapshot_stride }
//   scheme    "rk4"
//   initial   { u, rho }  each a preset name, a mode list [{k, cos, sin}], or
//                         { preset, amplitude, offset, shift, center, width, modes }
//   output    { directory, formats ["csv", "json"] }
//   seed      unsigned integer
//   solver    { min_phix_floor, field_ceiling, diagnostics_stride,
//               interpolation ("trigonometric" | "cubic_spline"), density_coupling }
//   curvature { pair_count, max_mode, pairs ("random" | "ch_reduced" | "degenerate"),
//               include_counterexample }
//   verify    { trials, max_mode, inject_fault ("" | "b_sign") }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pi2ch/curvature.hpp"
#include "pi2ch/initial_data.hpp"
#include "pi2ch/solver.hpp"

namespace pi2ch::cli {

/// Invalid or malformed configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct CurvatureSettings {
  int pair_count = 100;
  int max_mode = 8;
  ScanPairKind pairs = ScanPairKind::random;
  bool include_counterexample = true;
};

struct VerifySettings {
  int trials = 100;
  int max_mode = 8;
  std::string inject_fault;
};

struct RunConfig {
  std::size_t n = 256;
  Fraction dealias_fraction{};
  double dt = 1e-3;
  double t_end = 0.5;
  int snapshot_stride = 50;
  std::string scheme = "rk4";
  ProfileSpec initial_u{.preset = "two-mode"};
  ProfileSpec initial_rho{.preset = "single-mode", .offset = 1.0};
  std::filesystem::path output_directory = "out";
  std::vector<std::string> formats{"csv", "json"};
  std::uint64_t seed = 7;

  double min_phix_floor = 1e-4;
  double field_ceiling = 1e6;
  int diagnostics_stride = 1;
  InterpolationKind interpolation = InterpolationKind::trigonometric;
  bool density_coupling = true;

  CurvatureSettings curvature;
  VerifySettings verify;

  bool wants(const std::string& format) const;
};

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::filesystem::path> out;
};

/// Parses a JSON document. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Checks every module precondition the commands rely on. Throws ConfigError.
void validate(const RunConfig& config);

GridSpec grid_of(const RunConfig& config);
SolverConfig solver_config(const RunConfig& config);

}  // namespace pi2ch::cli
