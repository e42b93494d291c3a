#pragma once

#include <stdexcept>
#include <string>

namespace mfent {

/// Invalid input: malformed model, bad word, violated precondition.
/// The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Schema problems found while reading an experiment config.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bracketing, convergence or enumeration-size failures (exit code 1).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfent
