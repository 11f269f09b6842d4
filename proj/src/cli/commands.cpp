#include "pi2ch/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "pi2ch/cli/output.hpp"
#include "pi2ch/cli/verify.hpp"

namespace pi2ch::cli {

namespace {

using Json = nlohmann::ordered_json;

void require_finite(const Json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw NonFiniteError("non-finite value in " + where);
  if (j.is_structured())
    for (const auto& item : j) require_finite(item, where);
}

void write_json(const RunConfig& config, const std::string& name, const Json& j) {
  require_finite(j, name);
  if (config.wants("json")) write_atomically(config.output_directory / name, j.dump(2) + "\n");
}

void write_csv(const RunConfig& config, const std::string& name, const CsvWriter& csv) {
  if (config.wants("csv")) write_atomically(config.output_directory / name, csv.text());
}

CsvWriter snapshot_table(const std::vector<Snapshot>& snapshots) {
  CsvWriter csv{"t", "x", "u", "r"};
  for (const auto& s : snapshots) {
    const GridSpec& g = s.u.grid();
    for (std::size_t j = 0; j < g.n(); ++j) csv.add_row({s.t, g.x(j), s.u[j], s.r[j]});
  }
  return csv;
}

CsvWriter diagnostics_table(const std::vector<DiagnosticsRecord>& records) {
  CsvWriter csv{"t", "energy", "m1_residual", "m2_residual", "mean_r", "min_phi_x"};
  for (const auto& d : records) csv.add_row({d.t, d.energy, d.m1_residual, d.m2_residual, d.mean_r, d.min_phi_x});
  return csv;
}

Json trajectory_summary(const Trajectory& t) {
  Json j;
  j["halt_reason"] = to_string(t.halt);
  j["halt_time"] = t.halt_time;
  if (!t.halt_detail.empty()) j["halt_detail"] = t.halt_detail;
  if (t.halt == HaltReason::wave_breaking) j["breaking_time"] = t.halt_time;
  if (!t.diagnostics.empty()) {
    const auto& first = t.diagnostics.front();
    const auto& last = t.diagnostics.back();
    j["energy_initial"] = first.energy;
    j["energy_final"] = last.energy;
    j["energy_drift"] = t.energy_drift();
    j["max_m1_residual"] = t.max_m1_residual();
    j["max_m2_residual"] = t.max_m2_residual();
    j["max_abs_mean_r"] = t.max_abs_mean_r();
    j["min_phi_x"] = t.min_phi_x();
    j["final"] = {{"t", last.t},
                  {"m1_residual", last.m1_residual},
                  {"m2_residual", last.m2_residual},
                  {"mean_r", last.mean_r}};
  }
  return j;
}

Json run_header(const RunConfig& c, const char* command) {
  Json j;
  j["command"] = command;
  j["n"] = c.n;
  j["dealias_fraction"] = fmt::format("{}/{}", c.dealias_fraction.num, c.dealias_fraction.den);
  j["seed"] = c.seed;
  return j;
}

int exit_for(HaltReason reason) {
  switch (reason) {
    case HaltReason::completed:
      return kExitOk;
    case HaltReason::wave_breaking:
      return kExitWaveBreaking;
    case HaltReason::instability:
      return kExitInstability;
  }
  return kExitInstability;
}

int worse(int a, int b) {
  // instability outranks breaking, which outranks success
  auto rank = [](int code) { return code == kExitInstability ? 2 : code == kExitWaveBreaking ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

EulerianState initial_state(const RunConfig& c, const GridSpec& g) {
  return EulerianState::from_density(0.0, make_profile(g, c.initial_u), make_profile(g, c.initial_rho));
}

}  // namespace

unsigned worker_count() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PI2CH_THREADS"); env && *env) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap < 1) throw ConfigError("PI2CH_THREADS must be a positive integer");
    workers = std::min<unsigned long>(workers, static_cast<unsigned long>(cap));
  }
  return workers;
}

int cmd_simulate(const RunConfig& c, std::ostream& log) {
  const SolverConfig cfg = solver_config(c);
  const Trajectory traj = integrate_eulerian(initial_state(c, cfg.grid), cfg);

  Json summary = run_header(c, "simulate");
  summary["dt"] = c.dt;
  summary["t_end"] = c.t_end;
  summary["steps"] = cfg.step_count();
  summary.update(trajectory_summary(traj));

  write_csv(c, "snapshots.csv", snapshot_table(traj.snapshots));
  write_csv(c, "diagnostics.csv", diagnostics_table(traj.diagnostics));
  write_json(c, "summary.json", summary);
  fmt::print(log, "simulate: {} at t = {}, energy drift {:.3e}, m1 {:.3e}, m2 {:.3e}\n", to_string(traj.halt),
             traj.halt_time, traj.energy_drift(), traj.max_m1_residual(), traj.max_m2_residual());
  return exit_for(traj.halt);
}

int cmd_geodesic(const RunConfig& c, std::ostream& log) {
  const SolverConfig cfg = solver_config(c);
  const EulerianState s0 = initial_state(c, cfg.grid);
  const LagrangianRun lag = integrate_lagrangian(TangentPair::from_representative(s0.u, s0.r), cfg);
  const Trajectory eul = integrate_eulerian(s0, cfg);
  const Trajectory& traj = lag.trajectory;

  CsvWriter cross{"t", "supnorm_diff_u", "supnorm_diff_r"};
  double max_u = 0.0;
  double max_r = 0.0;
  const std::size_t common = std::min(traj.snapshots.size(), eul.snapshots.size());
  for (std::size_t i = 0; i < common; ++i) {
    const Snapshot& a = traj.snapshots[i];
    const Snapshot& b = eul.snapshots[i];
    if (a.t != b.t) break;
    const double du = (a.u - b.u).sup_norm();
    const double dr = (a.r - b.r).sup_norm();
    max_u = std::max(max_u, du);
    max_r = std::max(max_r, dr);
    cross.add_row({a.t, du, dr});
  }

  Json summary = run_header(c, "geodesic");
  summary["dt"] = c.dt;
  summary["t_end"] = c.t_end;
  summary["steps"] = cfg.step_count();
  summary.update(trajectory_summary(traj));
  summary["eulerian"] = trajectory_summary(eul);
  summary["crosscheck"] = {{"rows", cross.rows()}, {"max_supnorm_diff_u", max_u}, {"max_supnorm_diff_r", max_r}};

  write_csv(c, "snapshots.csv", snapshot_table(traj.snapshots));
  write_csv(c, "eulerian_snapshots.csv", snapshot_table(eul.snapshots));
  write_csv(c, "diagnostics.csv", diagnostics_table(traj.diagnostics));
  write_csv(c, "crosscheck.csv", cross);
  write_json(c, "summary.json", summary);
  fmt::print(log, "geodesic: {} at t = {}, max Eulerian difference u {:.3e}, r {:.3e}\n", to_string(traj.halt),
             traj.halt_time, max_u, max_r);
  return worse(exit_for(traj.halt), exit_for(eul.halt));
}

int cmd_curvature(const RunConfig& c, std::ostream& log) {
  const GridSpec g = grid_of(c);
  ScanOptions opt;
  opt.pair_count = c.curvature.pair_count;
  opt.seed = c.seed;
  opt.max_mode = c.curvature.max_mode;
  opt.kind = c.curvature.pairs;
  opt.include_counterexample = c.curvature.include_counterexample;
  opt.threads = worker_count();
  const auto entries = curvature_scan(g, opt);
  const ScanSummary s = summarize(entries);
  constexpr double kTolerance = 1e-7;

  CsvWriter csv{"pair_id", "s_closed", "s_direct", "abs_diff", "gamma_part", "mu_correction"};
  for (const auto& e : entries) {
    const auto& r = e.report;
    csv.add_row({static_cast<long>(e.pair_id), r.s_closed, r.s_direct, r.abs_diff, r.gamma_part, r.mu_correction});
  }

  static const char* kinds[] = {"random", "ch_reduced", "degenerate"};
  Json summary = run_header(c, "curvature");
  summary["pair_count"] = opt.pair_count;
  summary["pairs"] = kinds[static_cast<int>(opt.kind)];
  summary["max_mode"] = opt.max_mode;
  summary["include_counterexample"] = opt.include_counterexample;
  summary["max_abs_diff"] = s.max_abs_diff;
  summary["max_relative_diff"] = s.max_relative_diff;
  summary["tolerance"] = kTolerance;
  summary["max_abs_mu_correction"] = s.max_abs_mu_correction;
  summary["sign_counts"] = {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
  if (opt.include_counterexample) {
    const auto& r = entries.back().report;
    summary["counterexample"] = {{"pair_id", entries.back().pair_id},
                                 {"mu_correction", r.mu_correction},
                                 {"s_closed", r.s_closed},
                                 {"gamma_part", r.gamma_part}};
  }
  const bool pass = s.max_relative_diff <= kTolerance;
  summary["pass"] = pass;

  write_csv(c, "curvature.csv", csv);
  write_json(c, "summary.json", summary);
  fmt::print(log, "curvature: {} pairs, max relative difference {:.3e}, max |mu correction| {:.6g}\n",
             entries.size(), s.max_relative_diff, s.max_abs_mu_correction);
  if (!pass) {
    fmt::print(log, "curvature: identity failed: sectional_closed ({:.3e} > {:.1e})\n", s.max_relative_diff, kTolerance);
    return kExitIdentityFailure;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& log) {
  VerifyOptions opt;
  opt.grid = grid_of(c);
  opt.trials = c.verify.trials;
  opt.max_mode = c.verify.max_mode;
  opt.seed = c.seed;
  opt.inject_fault = c.verify.inject_fault;
  const VerifyReport report = run_verify_suite(opt);

  Json j = run_header(c, "verify");
  j["trials"] = opt.trials;
  j["max_mode"] = report.max_mode;
  j["tolerance_scale"] = report.tolerance_scale;
  if (!opt.inject_fault.empty()) j["inject_fault"] = opt.inject_fault;
  Json ids = Json::object();
  std::vector<std::string> failed;
  for (const auto& r : report.identities) {
    // a NaN residual is reported as a failure rather than aborting the write
    const double shown = std::isfinite(r.max_residual) ? r.max_residual : -1.0;
    ids[r.name] = {{"max_residual", shown}, {"tolerance", r.tolerance}, {"pass", r.pass}};
    if (!r.pass) failed.push_back(r.name);
  }
  j["identities"] = ids;
  j["pass"] = failed.empty();
  write_json(c, "verify.json", j);

  for (const auto& r : report.identities)
    fmt::print(log, "verify: {:<20} {:.3e} (tolerance {:.1e}) {}\n", r.name, r.max_residual, r.tolerance,
               r.pass ? "ok" : "FAILED");
  if (!failed.empty()) {
    std::string names;
    for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n;
    fmt::print(log, "verify: identity failed: {}\n", names);
    return kExitIdentityFailure;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments for the pi-2CH system on the circle"};
  app.require_subcommand(1);
  std::string config_path;
  Overrides overrides;
  std::optional<std::string> out_dir;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&);
  };
  static const Command commands[] = {
      {"simulate", "integrate the Eulerian system", cmd_simulate},
      {"geodesic", "integrate the geodesic equation and compare with the Eulerian run", cmd_geodesic},
      {"curvature", "scan closed-form against tensor sectional curvature", cmd_curvature},
      {"verify", "run the identity suite", cmd_verify},
  };
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", overrides.seed, "random seed");
    sub->add_option("--n", overrides.n, "grid size");
    sub->add_option("--dt", overrides.dt, "time step");
    sub->add_option("--t-end", overrides.t_end, "final time");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const Command* chosen = nullptr;
  for (const auto& cmd : commands)
    if (app.got_subcommand(cmd.name)) chosen = &cmd;

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (out_dir) overrides.out = *out_dir;
    apply_overrides(config, overrides);
    validate(config);
    worker_count();
  } catch (const Error& e) {
    fmt::print(err, "pi2ch {}: config error: {}\n", chosen->name, e.what());
    return kExitConfig;
  }

  try {
    return chosen->fn(config, out);
  } catch (const ConfigError& e) {
    fmt::print(err, "pi2ch {}: config error: {}\n", chosen->name, e.what());
    return kExitConfig;
  } catch (const NonFiniteError& e) {
    fmt::print(err, "pi2ch {}: numerical instability: {}\n", chosen->name, e.what());
    return kExitInstability;
  } catch (const BreakdownError& e) {
    fmt::print(err, "pi2ch {}: wave breaking: {}\n", chosen->name, e.what());
    return kExitWaveBreaking;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(err, "pi2ch {}: cannot write output: {}\n", chosen->name, e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(err, "pi2ch {}: error: {}\n", chosen->name, e.what());
    return kExitInstability;
  }
}

}  // namespace pi2ch::cli
