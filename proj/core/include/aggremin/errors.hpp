#pragma once

#include <stdexcept>
#include <string>

namespace aggremin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument hits a pole of a gamma-family function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration exceeded its term/iteration cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Parameters do not belong to the regime an operation requires.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// An exponent is so close to 0 that the power form loses all precision;
/// the logarithmic form must be requested explicitly.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Line search step size underflowed.
class StallError : public Error {
 public:
  using Error::Error;
};

}  // namespace aggremin
