#pragma once

// Curvature of the right-invariant metric at the identity: the tensor built
// from D1 Gamma and nested Christoffel terms, the closed-form unnormalized
// sectional curvature with its mean-value correction, and a randomized scan
// comparing the two.

#include <cstdint>
#include <vector>

#include "pi2ch/geometry.hpp"

namespace pi2ch {

struct CurvatureReport {
  double s_closed = 0.0;
  double s_direct = 0.0;
  double abs_diff = 0.0;
  double mu_correction = 0.0;
  double gamma_part = 0.0;

  /// abs_diff / (1 + |s_direct|).
  double relative_diff() const;
};

/// D1 Gamma(w,u) v = -Gamma(w_x v1, u) - Gamma(u_x v1, w) + Gamma(w,u)_x v1,
/// the derivative of p -> Gamma_p(w,u) at the identity along v.
TangentPair d1_gamma(const TangentPair& w, const TangentPair& u, const TangentPair& v);

/// R(u,v)w = D1Gamma(w,u)v - D1Gamma(w,v)u + Gamma(Gamma(w,v),u) - Gamma(Gamma(w,u),v).
TangentPair riemann(const TangentPair& u, const TangentPair& v, const TangentPair& w);

/// S(u,v) = <R(u,v)v, u>, evaluated through the full tensor.
double sectional_direct(const TangentPair& u, const TangentPair& v);

/// The four mean-value terms
///   mu(u1_x v2)^2 + mu(u2_x v1)^2 + mu(u1 u2_x) mu(v1_x v2) + mu(u2 v1_x) mu(u1 v2_x).
double mu_correction(const TangentPair& u, const TangentPair& v);

/// <Gamma(u,v),Gamma(u,v)> - <Gamma(u,u),Gamma(v,v)>.
double gamma_part(const TangentPair& u, const TangentPair& v);

/// Closed form plus the brute-force value for comparison.
CurvatureReport sectional_closed(const TangentPair& u, const TangentPair& v);

/// The pair u = (sin 2 pi x, 0), v = (0, cos 2 pi x); its mean-value
/// correction is pi^2.
std::pair<TangentPair, TangentPair> counterexample_pair(const GridSpec& grid);

enum class ScanPairKind {
  random,      // independent random pairs
  ch_reduced,  // random pairs with both density components zeroed
  degenerate,  // v = a u for a random scale a
};

struct ScanOptions {
  int pair_count = 100;
  std::uint64_t seed = 7;
  int max_mode = 8;
  ScanPairKind kind = ScanPairKind::random;
  /// Append the counterexample pair after the random pairs.
  bool include_counterexample = false;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct ScanEntry {
  int pair_id;
  CurvatureReport report;
};

struct ScanSummary {
  double max_abs_diff = 0.0;
  double max_relative_diff = 0.0;
  double max_abs_mu_correction = 0.0;
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Deterministic for a given seed regardless of the worker count.
std::vector<ScanEntry> curvature_scan(const GridSpec& grid, const ScanOptions& options);

/// Sign classification uses |s_closed| <= zero_tolerance as zero.
ScanSummary summarize(const std::vector<ScanEntry>& entries, double zero_tolerance = 1e-12);

}  // namespace pi2ch
