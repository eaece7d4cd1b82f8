#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toricap {

enum class ErrorCode {
  ParseError,
  NotConvex,
  ZeroArea,
  NoSmoothVertex,
  ChopTooLarge,
  SingularSurface,
  SingularSurfaceChi,
  NotEffective,
  NotInSW,
  NotContractible,
  NotDomainPolygon,
  NotConcave,
  BoxTooSmall,
  IterationLimit,
  Overflow,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::ZeroArea: return "ZeroArea";
    case ErrorCode::NoSmoothVertex: return "NoSmoothVertex";
    case ErrorCode::ChopTooLarge: return "ChopTooLarge";
    case ErrorCode::SingularSurface: return "SingularSurface";
    case ErrorCode::SingularSurfaceChi: return "SingularSurfaceChi";
    case ErrorCode::NotEffective: return "NotEffective";
    case ErrorCode::NotInSW: return "NotInSW";
    case ErrorCode::NotContractible: return "NotContractible";
    case ErrorCode::NotDomainPolygon: return "NotDomainPolygon";
    case ErrorCode::NotConcave: return "NotConcave";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure in the library is reported through this one exception type;
// callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures remember where they happened.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace toricap
