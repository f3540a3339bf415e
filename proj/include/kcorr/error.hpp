#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcorr {

enum class ErrorKind {
  AmbientMismatch,
  FieldMismatch,
  UnknownVariable,
  NotWellDefined,
  InvalidArity,
  InvalidObject,
  InvalidMorphism,
  ShapeError,
  InternalLawViolation,
  NotIntegral,
  InvalidCertificate,
  UnknownObject,
  ParseError,
  ResolveError,
  GenerationFailed,
  DivisionByZero,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures additionally carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::ParseError,
              std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace kcorr
