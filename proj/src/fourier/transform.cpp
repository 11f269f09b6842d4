#include "transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace pi2ch::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealPlan {
 public:
  explicit RealPlan(std::size_t n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(n / 2 + 1);
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(size, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(size, spec_, real_, FFTW_ESTIMATE);
  }

  RealPlan(const RealPlan&) = delete;
  RealPlan& operator=(const RealPlan&) = delete;

  ~RealPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }

  Spectrum forward(std::span<const double> values) {
    std::copy(values.begin(), values.end(), real_);
    fftw_execute(forward_);
    const double scale = 1.0 / static_cast<double>(n_);
    Spectrum out(n_ / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = Complex(spec_[k][0] * scale, spec_[k][1] * scale);
    }
    return out;
  }

  std::vector<double> backward(std::span<const Complex> coeffs) {
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      spec_[k][0] = coeffs[k].real();
      spec_[k][1] = coeffs[k].imag();
    }
    // Real data has real DC and Nyquist coefficients.
    spec_[0][1] = 0.0;
    spec_[n_ / 2][1] = 0.0;
    fftw_execute(backward_);
    return {real_, real_ + n_};
  }

 private:
  std::size_t n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

RealPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<RealPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealPlan>(n);
  return *slot;
}

}  // namespace

Spectrum forward_transform(std::span<const double> values) {
  return plan_for(values.size()).forward(values);
}

std::vector<double> inverse_transform(std::span<const Complex> coeffs, std::size_t n) {
  if (coeffs.size() != n / 2 + 1) {
    throw DomainError("inverse_transform: expected n/2+1 coefficients");
  }
  return plan_for(n).backward(coeffs);
}

}  // namespace pi2ch::detail
