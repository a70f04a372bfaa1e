#pragma once

#include <stdexcept>
#include <string>

namespace smclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Empty input, wrong lengths, bad parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A value outside the mathematical domain of an operation (e.g. a return <= -1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input too large for an exact/combinatorial routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Two series that must share dates do not.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace smclab
