#pragma once

#include <stdexcept>
#include <string>

namespace arsurv {

// Base for every error the library reports. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A closed-form value does not fit in a double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical method did not converge within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed its work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Parameters lie outside the region an operation is defined on.
class RegionError : public Error {
 public:
  using Error::Error;
};

// A configuration or data file is malformed or fails schema validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace arsurv
