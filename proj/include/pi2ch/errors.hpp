#pragma once

#include <stdexcept>
#include <string>

namespace pi2ch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a library operation (bad grid size, negative step...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A circle map lost monotonicity, or its Jacobian fell below a floor.
/// Carries the offending minimum of phi_x.
class BreakdownError : public Error {
 public:
  BreakdownError(const std::string& what, double min_jacobian)
      : Error(what), min_jacobian_(min_jacobian) {}

  double min_jacobian() const noexcept { return min_jacobian_; }

 private:
  double min_jacobian_;
};

// Sink for non-fatal diagnostics; defaults to stderr.
using WarningSink = void (*)(const std::string&);
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace pi2ch
