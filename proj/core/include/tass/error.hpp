#pragma once

#include <stdexcept>
#include <string>

namespace tass {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;

  /// Short machine-readable category, e.g. "parse" or "io".
  [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed textual input (prefix, address, decimal).
class ParseError : public Error {
public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "parse"; }
};

/// A precondition of an operation was violated by its arguments.
class InvalidInput : public Error {
public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "input"; }
};

/// Stream or filesystem failure.
class IoError : public Error {
public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "io"; }
};

} // namespace tass
