#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordcomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad interval, invalid poset, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Two grid functions were combined over different grids.
class DomainMismatch : public Error {
public:
  using Error::Error;
};

/// A mask leaves a full grid cell excluded, so it is not an admissible dense set.
class NotDense : public Error {
public:
  using Error::Error;
};

/// The constructive solver could not produce a jet, patch or partition.
class SolveFailure : public Error {
public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace ordcomp
