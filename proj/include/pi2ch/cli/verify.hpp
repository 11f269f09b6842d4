#pragma once

// Property suite behind the verify command: transform round trips, torsion,
// the B adjoint identity, the Gamma decomposition and metric compatibility,
// each evaluated over seeded random band-limited data.

#include <cstdint>
#include <string>
#include <vector>

#include "pi2ch/fourier.hpp"

namespace pi2ch::cli {

struct VerifyOptions {
  GridSpec grid{128};
  int trials = 100;
  int max_mode = 8;
  std::uint64_t seed = 7;
  /// "b_sign" flips the sign of B inside the adjoint check.
  std::string inject_fault;
};

struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  int max_mode = 0;  // after the grid cap
  double tolerance_scale = 1.0;
  std::vector<IdentityResult> identities;

  bool all_pass() const;
};

/// Random data is capped at floor(cutoff / 2) modes so that every quadratic
/// product stays below the dealias cutoff.
int effective_max_mode(const GridSpec& grid, int requested);

/// 1 for n >= 64, 10 below.
double tolerance_scale(const GridSpec& grid);

VerifyReport run_verify_suite(const VerifyOptions& options);

}  // namespace pi2ch::cli
