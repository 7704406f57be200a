#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace findim {

enum class ErrorCode {
  NotFiniteDimensional,
  BadRelation,
  NotPrime,
  AlgebraMismatch,
  NotInjective,
  FieldTooSmall,
  NonSplit,
  NotIndecomposable,
  Undecided,
  RadCubeNotZero,
  EpssNotConverged,
  ValidationFailed,
  CoverNotFound,
  MissingAssumption,
  MissingEpss,
  SyntaxError,
  UnknownArrow,
  NonParallelRelation,
  ParseError,
  MissingContext,
  IndexError,
  UnknownCorpusName,
  InvalidArgument,
  CapExceeded,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorCode::BadRelation: return "BadRelation";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::NonSplit: return "NonSplit";
    case ErrorCode::NotIndecomposable: return "NotIndecomposable";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::RadCubeNotZero: return "RadCubeNotZero";
    case ErrorCode::EpssNotConverged: return "EpssNotConverged";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::CoverNotFound: return "CoverNotFound";
    case ErrorCode::MissingAssumption: return "MissingAssumption";
    case ErrorCode::MissingEpss: return "MissingEpss";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownArrow: return "UnknownArrow";
    case ErrorCode::NonParallelRelation: return "NonParallelRelation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingContext: return "MissingContext";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::UnknownCorpusName: return "UnknownCorpusName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

}  // namespace findim
