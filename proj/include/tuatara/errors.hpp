#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tuatara {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad value, malformed input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A Kraft-Chaitin request would push the running sum of 2^-n above 1.
class KraftViolation : public Error {
 public:
  explicit KraftViolation(std::size_t index)
      : Error("KraftViolation at index " + std::to_string(index)), index_(index) {}

  /// 1-based position of the offending length in the input stream.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A computation ran out of its enumeration/size budget before reaching a
/// certified answer.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Line-numbered diagnostic from the machine-file reader.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tuatara
