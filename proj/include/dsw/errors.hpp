#pragma once

#include <stdexcept>
#include <string>

namespace dsw {

// Invalid parameter combinations or out-of-range inputs.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cylinders or cutoffs that do not fit inside the computational domain.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Certificate calibration exhausted its constant budget.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stored solution too coarse to resolve a requested integral.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed configuration or data files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates model requirements.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failures.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dsw
