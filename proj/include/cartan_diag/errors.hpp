#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Base of every error thrown by the library. The C API maps each subclass
/// onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A denominator pairing vanished (within the pole tolerance).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A leading principal minor vanished: the input lies in a lower Birkhoff
/// stratum and has no LDU factorization.
class NonGenericError : public Error {
 public:
  using Error::Error;
};

/// LDU phases of a supposedly Cartan-symmetric matrix are not +-1.
class PhaseError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cartan
