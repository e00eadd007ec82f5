#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgchroma {

enum class ErrorKind {
  UnsupportedOrder,
  DivisionByZero,
  ZeroVector,
  InvalidDimension,
  SamePoint,
  TooLarge,
  DimensionMismatch,
  ParseError,
  ChecksumMismatch,
  ParameterMismatch,
  ReservedColorUnused,
  MissingBase,
  ImproperSource,
  CorruptCertificate,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::SamePoint: return "SamePoint";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::ReservedColorUnused: return "ReservedColorUnused";
    case ErrorKind::MissingBase: return "MissingBase";
    case ErrorKind::ImproperSource: return "ImproperSource";
    case ErrorKind::CorruptCertificate: return "CorruptCertificate";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line` is set for parse errors (1-based, 0 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int line = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace pgchroma
