#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypertensor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed hypergraph, tensor or vector input.
class InvalidInput : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : InvalidInput("dimension mismatch: expected " + std::to_string(expected) +
                     ", got " + std::to_string(actual)) {}
};

/// A caller-side precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An exhaustive or backtracking search would exceed its configured limit.
/// The answer is undecided, never guessed.
class SearchLimitExceeded : public Error {
public:
  using Error::Error;
};

/// An eigenpair failed independent residual verification.
class CertificationFailure : public Error {
public:
  using Error::Error;
};

/// Line-numbered error from the hypergraph file parser.
class ParseError : public InvalidInput {
public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace hypertensor
