#pragma once

#include <stdexcept>
#include <string>

namespace finscat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bessel-polynomial order beyond the double-precision coefficient guard.
class OrderTooLargeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Partial-wave series terms kept growing past the midpoint of the truncation.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// The scattered flux vanishes, so its direction is undefined.
class UndefinedAngleError : public Error {
 public:
  using Error::Error;
};

/// The radial scattered flux vanishes and the obliquity factor blows up.
class SingularObliquityError : public Error {
 public:
  using Error::Error;
};

/// The generatrix ODE became near-tangential (|tan γ| above the guard).
class StepInstabilityError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// The radial solution has a node at the matching radius.
class MatchNodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace finscat
