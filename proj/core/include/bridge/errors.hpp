#pragma once

#include <stdexcept>
#include <string>

namespace bridge {

// All library failures derive from one of the standard exception families so
// callers can catch either the specific type or std::exception.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Query point outside the interval an interpolant is defined on.
class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A collocation state with R <= 0 somewhere (the profile touched the axis).
class SingularState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Denominator r*u + sin(phi) reached zero along an inclination-parametrized
/// trajectory.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outer radius hit the hard cap before T stabilised.
class TruncationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Samples handed to the sigma-differentiator are not on a Chebyshev grid.
class GridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bridge
