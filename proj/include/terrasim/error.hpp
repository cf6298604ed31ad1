#pragma once

#include <stdexcept>
#include <string>

namespace terrasim {

/// Violated precondition or invariant on user-supplied inputs.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields defined on different grids were combined.
class GridMismatch : public std::logic_error {
 public:
  GridMismatch() : std::logic_error("fields are defined on different grids") {}
};

/// Explicit time step exceeds a stability bound.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace terrasim
