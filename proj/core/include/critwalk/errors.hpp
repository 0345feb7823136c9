#pragma once

#include <stdexcept>
#include <string>

namespace critwalk {

/// Raised when a model or sampler parameter violates its documented range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a materialization request exceeds the oracle size cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a materialized instance is internally inconsistent.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exponent fit has too few usable rows.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace critwalk
