#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input row (wrong arity, unparsable field).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally inconsistent data (feature arity drift, broken invariants).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Tensor shape incompatibility.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced by a numeric computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent model / loss / checkpoint configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A Var was used with a tape that did not create it.
class TraceError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempo
