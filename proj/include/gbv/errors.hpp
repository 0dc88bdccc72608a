#pragma once

#include <stdexcept>
#include <string>

namespace gbv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument to an operation (bad exponent, malformed input, empty
/// search range, negative oscillation, ...). CLI exit code 1.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Invalid object construction (non-finite samples, non-monotone weights, ...).
/// CLI exit code 1.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a documented desk-scale cap (exact-search size, scan range,
/// breakpoint materialization, ...). CLI exit code 2.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A verification assertion failed (oracle mismatch, bound violated). CLI
/// exit code 3.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gbv
