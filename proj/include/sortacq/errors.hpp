#pragma once

#include <stdexcept>
#include <string>

namespace sortacq {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries a 1-based source position.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Unknown sort name, cycle, re-parenting, or other hierarchy inconsistency.
class HierarchyError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that is inconsistent with the rest of the data.
class DataError : public Error {
public:
  using Error::Error;
};

}  // namespace sortacq
