#pragma once

#include <stdexcept>
#include <string>

namespace hill {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression, coefficient file or problem file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An expression evaluated to inf/NaN away from a declared removable point.
class NonFinite : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size collapsed or the solution overflowed.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

class RootSearchFailure : public Error {
 public:
  using Error::Error;
};

class NotAnEigenvalue : public Error {
 public:
  using Error::Error;
};

/// A nontrivial solution with u = u' = 0 at one point; always a numerical fault.
class DegenerateSolution : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class MissingEnvelopes : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace hill
