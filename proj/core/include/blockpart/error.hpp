#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockpart {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-monotone cut vectors, k == 0, empty inputs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An input element or aggregate violates the bound an operation requires.
class BoundError : public Error {
 public:
  BoundError(std::size_t index, double value, std::string bound);

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::size_t index_;
  double value_;
  std::string bound_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Internal invariant of an algorithm broke. Either a bug or a size
// functional that does not satisfy the conditions the caller claimed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// The finite prefix ran out before a required partial-sum threshold.
class HorizonExhausted : public Error {
 public:
  using Error::Error;
};

// Malformed input text; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blockpart
