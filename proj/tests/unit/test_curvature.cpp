#include <catch_amalgamated.hpp>

#include <cmath>

#include "pi2ch/curvature.hpp"
#include "support.hpp"

using namespace pi2ch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using test::max_abs_diff;

namespace {

double pair_diff(const TangentPair& a, const TangentPair& b) {
  return std::max(max_abs_diff(a.v1(), b.v1()), max_abs_diff(a.v2(), b.v2()));
}

TangentPair pair(PeriodicField a, const PeriodicField& b) { return TangentPair::from_representative(std::move(a), b); }

// d/de Gamma_{(id + e v1, e v2)}(w, u) at e = 0 through the right-invariant
// extension, by Richardson-extrapolated central differences.
TangentPair d1_gamma_fd(const TangentPair& w, const TangentPair& u, const TangentPair& v, double h) {
  const GroupPoint id = GroupPoint::identity(w.grid());
  auto central = [&](double step) {
    TangentPair d = christoffel_at(chart_shift(id, v, step), w, u) - christoffel_at(chart_shift(id, v, -step), w, u);
    d *= 0.5 / step;
    return d;
  };
  TangentPair fine = central(0.5 * h);
  fine *= 4.0;
  fine -= central(h);
  fine *= 1.0 / 3.0;
  return fine;
}

}  // namespace

TEST_CASE("D1 Gamma", "[d1_gamma]") {
  const GridSpec g(128);
  auto rng = trial_generator(21, 0);
  const auto w = random_tangent(g, 8, rng);
  const auto u = random_tangent(g, 8, rng);
  const auto v = random_tangent(g, 8, rng);

  CHECK(sup_norm(d1_gamma(w, u, TangentPair::zeros(g))) == 0.0);
  const auto zero = PeriodicField::zeros(g);
  const auto c1 = pair(PeriodicField::constant(g, 1.0), zero);
  const auto c2 = pair(PeriodicField::constant(g, -2.0), zero);
  CHECK(sup_norm(d1_gamma(c1, c2, c1)) <= 1e-14);

  SECTION("trilinearity") {
    const auto base = d1_gamma(w, u, v);
    CHECK(pair_diff(d1_gamma(2.0 * w, u, v), 2.0 * base) <= 1e-12 * sup_norm(base));
    CHECK(pair_diff(d1_gamma(w, -3.0 * u, v), -3.0 * base) <= 1e-12 * sup_norm(base));
    CHECK(pair_diff(d1_gamma(w, u, 0.5 * v), 0.5 * base) <= 1e-12 * sup_norm(base));
  }

  SECTION("matches finite differences of the right-invariant extension") {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      auto r = trial_generator(21, 1 + i);
      const auto wi = random_tangent(g, 8, r);
      const auto ui = random_tangent(g, 8, r);
      const auto vi = random_tangent(g, 8, r);
      worst = std::max(worst, pair_diff(d1_gamma(wi, ui, vi), d1_gamma_fd(wi, ui, vi, 1e-3)));
    }
    INFO("max deviation " << worst);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("curvature tensor", "[riemann]") {
  const GridSpec g(128);
  auto rng = trial_generator(22, 0);
  const auto u = random_tangent(g, 8, rng);
  const auto v = random_tangent(g, 8, rng);
  const auto w = random_tangent(g, 8, rng);

  CHECK(sup_norm(riemann(u, u, w)) <= 1e-12);
  const auto zero = PeriodicField::zeros(g);
  const auto c = pair(PeriodicField::constant(g, 0.4), zero);
  CHECK(sup_norm(riemann(c, c, c)) <= 1e-14);
  const auto r = riemann(u, v, w);
  CHECK(pair_diff(r, -riemann(v, u, w)) <= 1e-10);
}

TEST_CASE("sectional curvature, direct route", "[sectional]") {
  const GridSpec g(128);
  auto rng = trial_generator(23, 0);
  const auto u = random_tangent(g, 8, rng);
  const auto v = random_tangent(g, 8, rng);

  CHECK_THAT(sectional_direct(u, u), WithinAbs(0.0, 1e-12));
  CHECK(sectional_direct(u, TangentPair::zeros(g)) == 0.0);

  SECTION("worked value for two pure density directions") {
    // Hand evaluation: Gamma(u,v) = (-pi cos(4 pi x)/(1+16 pi^2), 0),
    // Gamma(u,u) = -Gamma(v,v) = (-pi sin(4 pi x)/(1+16 pi^2), 0), no mean terms.
    const auto zero = PeriodicField::zeros(g);
    const auto a = pair(zero, PeriodicField::sample(g, [](double x) { return std::sin(kTwoPi * x); }));
    const auto b = pair(zero, PeriodicField::sample(g, [](double x) { return std::cos(kTwoPi * x); }));
    const double expected = kPi * kPi / (1.0 + 16.0 * kPi * kPi);
    CHECK_THAT(sectional_direct(a, b), WithinAbs(expected, 1e-9));
    const auto rep = sectional_closed(a, b);
    CHECK_THAT(rep.s_closed, WithinAbs(expected, 1e-9));
    CHECK_THAT(rep.mu_correction, WithinAbs(0.0, 1e-15));
  }

  SECTION("quartic scaling") {
    const double s = sectional_direct(u, v);
    CHECK_THAT(sectional_direct(2.0 * u, -0.5 * v), WithinRel(s, 1e-10));
    CHECK_THAT(sectional_direct(3.0 * u, 1.5 * v), WithinRel(9.0 * 2.25 * s, 1e-10));
  }
}

TEST_CASE("closed form with mean-value correction", "[sectional_closed]") {
  const GridSpec g(128);
  const auto zero = PeriodicField::zeros(g);

  SECTION("coincident directions") {
    auto rng = trial_generator(24, 0);
    const auto u = random_tangent(g, 8, rng);
    const auto rep = sectional_closed(u, u);
    CHECK_THAT(rep.mu_correction, WithinAbs(0.0, 1e-12));
    CHECK_THAT(rep.s_closed, WithinAbs(0.0, 1e-12));
    CHECK_THAT(rep.s_closed, WithinAbs(rep.gamma_part + rep.mu_correction, 1e-15));
  }
  SECTION("one-component reduction") {
    auto rng = trial_generator(24, 1);
    const auto u = pair(random_band_limited(g, 8, rng), zero);
    const auto v = pair(random_band_limited(g, 8, rng), zero);
    const auto rep = sectional_closed(u, v);
    CHECK(rep.mu_correction == 0.0);
    CHECK(rep.relative_diff() <= 1e-7);
  }
  SECTION("counterexample pair") {
    const auto [u, v] = counterexample_pair(g);
    const auto rep = sectional_closed(u, v);
    // mu(u1_x v2) = mu(2 pi cos^2(2 pi x)) = pi
    CHECK_THAT(rep.mu_correction, WithinAbs(kPi * kPi, 1e-9));
    CHECK(rep.relative_diff() <= 1e-7);
    CHECK(std::abs(rep.gamma_part - rep.s_direct) > 1.0);
  }
  SECTION("agreement with the tensor route on random pairs") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      auto r = trial_generator(24, 10 + i);
      const auto u = random_tangent(g, 8, r);
      const auto v = random_tangent(g, 8, r);
      const auto rep = sectional_closed(u, v);
      worst = std::max(worst, rep.relative_diff());
    }
    INFO("max relative deviation " << worst);
    CHECK(worst <= 1e-7);
  }
  SECTION("symmetry of S in its arguments") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      auto r = trial_generator(24, 50 + i);
      const auto u = random_tangent(g, 8, r);
      const auto v = random_tangent(g, 8, r);
      worst = std::max(worst, std::abs(sectional_direct(u, v) - sectional_direct(v, u)));
    }
    INFO("max |S(u,v) - S(v,u)| = " << worst);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("curvature scan", "[scan]") {
  const GridSpec g(128);

  SECTION("degenerate plane") {
    ScanOptions opt;
    opt.pair_count = 1;
    opt.kind = ScanPairKind::degenerate;
    const auto entries = curvature_scan(g, opt);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].report.abs_diff <= 1e-8);
    CHECK_THAT(entries[0].report.s_closed, WithinAbs(0.0, 1e-8));
  }
  SECTION("one-component scan has no mean correction") {
    ScanOptions opt;
    opt.pair_count = 10;
    opt.kind = ScanPairKind::ch_reduced;
    CHECK(summarize(curvature_scan(g, opt)).max_abs_mu_correction <= 1e-12);
  }
  SECTION("deterministic and independent of the worker count") {
    ScanOptions opt;
    opt.pair_count = 6;
    opt.seed = 99;
    opt.include_counterexample = true;
    opt.threads = 1;
    const auto serial = curvature_scan(g, opt);
    opt.threads = 3;
    const auto parallel = curvature_scan(g, opt);
    REQUIRE(serial.size() == 7);
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].pair_id == static_cast<int>(i));
      CHECK(serial[i].report.s_closed == parallel[i].report.s_closed);
      CHECK(serial[i].report.s_direct == parallel[i].report.s_direct);
    }
    CHECK_THAT(serial.back().report.mu_correction, WithinAbs(kPi * kPi, 1e-9));
    const auto summary = summarize(serial);
    CHECK(summary.positive + summary.negative + summary.zero == 7);
  }
  CHECK_THROWS_AS(curvature_scan(g, ScanOptions{.pair_count = 0}), DomainError);
}
