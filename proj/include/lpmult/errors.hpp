#pragma once

#include <stdexcept>
#include <string>

namespace lpmult {

// Invalid mathematical input: exceptional parameters, malformed symbols,
// unnormalized vector fields. The CLI maps this to exit code 2.
class MathInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when c lies in (or within the safety margin of) the exceptional set.
class ExceptionalParameterError : public MathInputError {
 public:
  using MathInputError::MathInputError;
};

// Band, grid or configuration too small for the requested computation.
// The CLI maps this to exit code 3.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpmult
