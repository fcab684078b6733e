#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

/// Argument outside the domain on which a bound or formula is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative procedure (quadrature, root finding) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A partition violates the admissibility conditions of the iterated bound.
class ValidityError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A perturbed eigenvalue sits too close to the d/2 classification boundary.
class BoundaryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No admissible partition reaches the requested end point.
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace specgap
