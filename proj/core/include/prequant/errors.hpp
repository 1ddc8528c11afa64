#pragma once

#include <stdexcept>
#include <string>

namespace prequant {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: wrong dimension, non-tangent vector, bad identifier.
class InputError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Arguments are well formed but outside the domain of the operation
/// (e.g. points on different fibers, a flow that does not close).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Numerical flow integration left the constraint manifold.
class IntegrationError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature failed to converge.
class QuadratureError : public Error {
public:
  using Error::Error;
};

/// Scenario file could not be read or validated.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace prequant
