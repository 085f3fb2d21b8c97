#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semcloud {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Schema or referential-integrity violation inside the knowledge base.
class KbError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or file-format problem (unreadable file, malformed XYZ line).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a geometric or cloud operation.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Rule text could not be parsed, or a parsed rule is unsafe.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Runtime failure while evaluating a rule body or head.
class EngineError : public Error {
 public:
  using Error::Error;
};

/// The engine did not reach a fixpoint within the iteration budget.
class FixpointError : public EngineError {
 public:
  using EngineError::EngineError;
};

/// A synthetic scene description is inconsistent.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace semcloud
