#pragma once

#include <span>
#include <vector>

#include "pi2ch/fourier.hpp"

namespace pi2ch::detail {

// Real-to-half-complex transform with 1/n normalization. Plans are cached per
// thread and per size; planning itself is serialized.
Spectrum forward_transform(std::span<const double> values);
std::vector<double> inverse_transform(std::span<const Complex> coeffs, std::size_t n);

}  // namespace pi2ch::detail
