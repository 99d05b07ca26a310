#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mproj {

enum class ErrorCode {
  NotSquare,
  NotFinite,
  NotHermitian,
  DomainError,
  NotIdempotent,
  NotProjection,
  SingularPencil,
  BadRank,
  BadArgument,
  NotQpp,
  NotUnitary,
  InapplicableHypothesis,
  ZeroParameter,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::SingularPencil: return "SingularPencil";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::NotQpp: return "NotQpp";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InapplicableHypothesis: return "InapplicableHypothesis";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mproj
