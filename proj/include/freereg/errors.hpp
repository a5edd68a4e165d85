#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freereg {

// Common base so callers can catch everything thrown by the library in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mixing operands built over different generator counts, or matrix size mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or otherwise unusable parameter (R <= 0, bins < 1, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Expression text rejected; offset() is the byte position of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A user-supplied trace table was asked for a word it does not define.
class TraceUndefinedError : public Error {
 public:
  using Error::Error;
};

// A symbolic computation grew past its configured term budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An iterative numeric routine ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A floating-point result failed a consistency requirement (lost Hermitianity,
// failed rational rounding, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Too little sample mass near the point of interest to fit anything.
class SparseMassError : public Error {
 public:
  using Error::Error;
};

}  // namespace freereg
