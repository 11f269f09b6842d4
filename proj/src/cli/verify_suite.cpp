#include <algorithm>
#include <cmath>

#include "pi2ch/cli/verify.hpp"
#include "pi2ch/geometry.hpp"

namespace pi2ch::cli {

bool VerifyReport::all_pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass; });
}

int effective_max_mode(const GridSpec& grid, int requested) {
  return std::max(1, std::min(requested, static_cast<int>(grid.dealias_cutoff() / 2)));
}

double tolerance_scale(const GridSpec& grid) { return grid.n() >= 64 ? 1.0 : 10.0; }

VerifyReport run_verify_suite(const VerifyOptions& o) {
  if (o.trials < 1) throw DomainError("run_verify_suite: trials must be >= 1");
  const GridSpec& g = o.grid;
  VerifyReport report;
  report.max_mode = effective_max_mode(g, o.max_mode);
  report.tolerance_scale = tolerance_scale(g);
  const bool flip_b = o.inject_fault == "b_sign";

  double transform = 0.0;
  double helmholtz = 0.0;
  double torsion = 0.0;
  double adjoint = 0.0;
  double decomposition = 0.0;
  double compatibility = 0.0;
  for (int i = 0; i < o.trials; ++i) {
    auto rng = trial_generator(o.seed, static_cast<std::uint64_t>(i));
    const TangentPair u = random_tangent(g, report.max_mode, rng);
    const TangentPair v = random_tangent(g, report.max_mode, rng);
    const TangentPair w = random_tangent(g, report.max_mode, rng);

    const PeriodicField& f = u.v1();
    const PeriodicField back = PeriodicField::from_spectrum(g, f.to_spectrum());
    transform = std::max(transform, (back - f).sup_norm());
    helmholtz = std::max(helmholtz, (apply_helmholtz(invert_helmholtz(f)) - f).sup_norm());

    torsion = std::max(torsion, metric_norm(christoffel(u, v) - christoffel(v, u)));

    TangentPair b = bilinear_b(u, v);
    if (flip_b) b *= -1.0;
    adjoint = std::max(adjoint, std::abs(metric(b, w) - metric(u, lie_bracket(v, w))));

    decomposition = std::max(decomposition, gamma_decomposition_residual(u, v));
    compatibility = std::max(compatibility, compatibility_residual(u, v, w));
  }

  auto add = [&](std::string name, double residual, double base) {
    const double tol = base * report.tolerance_scale;
    report.identities.push_back({std::move(name), residual, tol, residual <= tol});
  };
  add("transform_roundtrip", transform, 1e-13);
  add("helmholtz_roundtrip", helmholtz, 1e-10);
  add("torsion", torsion, 1e-12);
  add("adjoint", adjoint, 1e-9);
  add("gamma_decomposition", decomposition, 1e-9);
  add("compatibility", compatibility, 1e-9);
  return report;
}

}  // namespace pi2ch::cli
