#pragma once

#include <stdexcept>
#include <string>

namespace ecsbell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (NaN, r >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested construction degenerates (vanishing norm, beta == gamma, alpha == 0).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A closed form produced a value that violates its own invariants.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Input failed validation (e.g. not a density matrix).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; the message carries the position.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The Fock basis truncation is too small for the requested object.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_n_max)
      : Error(what), required_n_max_(required_n_max) {}
  int required_n_max() const noexcept { return required_n_max_; }

 private:
  int required_n_max_;
};

}  // namespace ecsbell
