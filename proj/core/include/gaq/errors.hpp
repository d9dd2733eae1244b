#ifndef GAQ_ERRORS_HPP
#define GAQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaq {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Evaluation or substitution hit a denominator that vanishes.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A symbol was required to be bound (or declared) and was not.
class UnboundSymbol : public Error {
 public:
  using Error::Error;
};

/// Linear system has no solution, or a matrix that must be invertible is not.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Group law, field basis or extension data violates a structural precondition.
class StructureError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Model file is syntactically valid but semantically inconsistent.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaq

#endif  // GAQ_ERRORS_HPP
