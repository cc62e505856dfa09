#pragma once

#include <stdexcept>
#include <string>

namespace wrtkit {

// Malformed input, inconsistent shapes, unsupported configuration. CLI exit code 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A least-squares fit or normalisation against an identically zero reference.
class DegenerateReference : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failure. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis does not hold for the given window or geometry.
class HypothesisError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Stored data does not cover the (u, v) range an inversion needs.
class CoverageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace wrtkit
