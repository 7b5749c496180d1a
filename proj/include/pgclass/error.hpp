#pragma once

#include <stdexcept>
#include <string>

namespace pgclass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed presentation text. Carries the 1-based position of the problem.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Invalid arguments: unknown corpus label, prime out of range, non-normal subgroup, ...
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same fact disagreed. Always a bug or a bad input group.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgclass
