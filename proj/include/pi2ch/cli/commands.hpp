#pragma once

#include <iosfwd>

#include "pi2ch/cli/config.hpp"

namespace pi2ch::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitWaveBreaking = 2,
  kExitInstability = 3,
  kExitIdentityFailure = 4,
};

/// Eulerian run: snapshots.csv, diagnostics.csv, summary.json.
int cmd_simulate(const RunConfig& config, std::ostream& log);
/// Geodesic run with Eulerian reconstruction, the Eulerian run from the same
/// data, and crosscheck.csv comparing the two.
int cmd_geodesic(const RunConfig& config, std::ostream& log);
/// Randomized comparison of the closed-form and tensor sectional curvature.
int cmd_curvature(const RunConfig& config, std::ostream& log);
/// Identity suite; verify.json.
int cmd_verify(const RunConfig& config, std::ostream& log);

/// Worker threads: hardware concurrency capped by PI2CH_THREADS when set.
/// Throws ConfigError for a malformed value.
unsigned worker_count();

/// Parses arguments, loads the configuration and runs a command. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pi2ch::cli
