#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is numerically degenerate (all-zero points, zero column, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A scalar or integer argument is outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A constrained program has no feasible point within tolerance.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An iterative solver stopped before reaching its tolerance.
class SolverDiverged : public Error {
 public:
  SolverDiverged(const std::string& what, double last_residual)
      : Error(what), last_residual(last_residual) {}
  double last_residual;
};

// Recovered components contradict each other (rank bookkeeping broke down).
class StructureInconsistent : public Error {
 public:
  using Error::Error;
};

// Fewer usable graph components than clusters requested.
class InsufficientComponents : public Error {
 public:
  using Error::Error;
};

}  // namespace ssc
