#pragma once

#include <stdexcept>
#include <string>

namespace gadgetforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters: non-prime modulus, out-of-range sizes, malformed input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operands from different fields, seeds of the wrong length, etc.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed its enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Raised when a guaranteed property fails; indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Two distinct vertices share more than one neighbour.
class IllDefinedGadget : public Error {
 public:
  using Error::Error;
};

}  // namespace gadgetforge
