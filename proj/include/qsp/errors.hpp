#pragma once

#include <stdexcept>
#include <string>

namespace qsp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (e.g. evaluating at z = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input rejected before any numerics run: malformed numbers, parity or bound violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Truncation left nothing to decompose.
class DegenerateInput : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The current working precision cannot certify a step; the caller should retry at higher R.
class PrecisionInsufficient : public Error {
 public:
  using Error::Error;
};

/// A projector has a nonzero Z component, so no angle form exists.
class NotParityConstrained : public Error {
 public:
  using Error::Error;
};

/// The adaptive driver ran past its worst-case precision without a passing result.
class PrecisionCapExceeded : public Error {
 public:
  PrecisionCapExceeded(const std::string& what, std::string diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace qsp
