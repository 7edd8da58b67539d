#pragma once

#include <stdexcept>
#include <string>

namespace supneg {

// Shapes disagree: amplitude count vs dims, mismatched operands, bad subsystem.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Norm below the 1e-14 floor; normalization is undefined.
struct NearZeroNorm : std::domain_error {
  using std::domain_error::domain_error;
};

// |a1|^2 + |a2|^2 off unity beyond tolerance.
struct CoefficientError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotConverged : std::runtime_error {
  NotConverged(const std::string& what, double off_diagonal)
      : std::runtime_error(what), residual(off_diagonal) {}
  double residual;
};

// Two evaluation routes of the same quantity disagree; indicates a convention bug.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace supneg
