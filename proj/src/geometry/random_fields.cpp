#include <cmath>

#include "pi2ch/geometry.hpp"

namespace pi2ch {

std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

PeriodicField random_band_limited(const GridSpec& grid, int max_mode, std::mt19937_64& rng, bool zero_mean) {
  if (max_mode < 0 || static_cast<std::size_t>(max_mode) >= grid.nyquist()) {
    throw DomainError("random_band_limited: max_mode must lie in [0, n/2)");
  }
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> a(max_mode + 1), b(max_mode + 1, 0.0);
  for (int k = 0; k <= max_mode; ++k) {
    const double scale = 1.0 / (1.0 + static_cast<double>(k) * k);
    a[k] = unit(rng) * scale;
    if (k > 0) b[k] = unit(rng) * scale;
  }
  if (zero_mean) a[0] = 0.0;
  return PeriodicField::sample(grid, [&](double x) {
    double s = a[0];
    for (int k = 1; k <= max_mode; ++k) {
      s += a[k] * std::cos(kTwoPi * k * x) + b[k] * std::sin(kTwoPi * k * x);
    }
    return s;
  });
}

TangentPair random_tangent(const GridSpec& grid, int max_mode, std::mt19937_64& rng) {
  PeriodicField v1 = random_band_limited(grid, max_mode, rng);
  PeriodicField v2 = random_band_limited(grid, max_mode, rng, true);
  return TangentPair::from_representative(std::move(v1), v2);
}

}  // namespace pi2ch
