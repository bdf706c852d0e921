#pragma once

#include <stdexcept>
#include <string>

namespace decaylab {

// Shapes or dimensions disagree (sample count vs grid, component counts).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two fields live on different grids.
struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A real-valued precondition fails: negative order on a field with a mean,
// negative time, parameter out of range.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A weight recursion has no positive solution for the supplied data size.
struct SmallnessViolation : std::domain_error {
  double threshold;
  SmallnessViolation(const std::string& what, double threshold_)
      : std::domain_error(what), threshold(threshold_) {}
};

// The integrated state produced a non-finite or runaway norm.
struct BlowUp : std::runtime_error {
  double t;
  double norm;
  BlowUp(const std::string& what, double t_, double norm_)
      : std::runtime_error(what), t(t_), norm(norm_) {}
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace decaylab
