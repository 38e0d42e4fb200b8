#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs of an operation does not hold.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search hit its configured work cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace graphent
