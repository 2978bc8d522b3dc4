#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace terracini {

enum class ErrorKind {
  NonRegularPoint,
  NonUnit,
  ZeroPolynomial,
  DimensionMismatch,
  NonSquarefree,
  CommonFactor,
  BadDegree,
  AmbientMismatch,
  PointNotOnCurve,
  SingularPoint,
  UnsupportedMultiplicity,
  UnsupportedSystem,
  NoRationalPointFound,
  NotSplit,
  NotASquare,
  NonReducedInput,
  PreconditionNotMet,
  DegreeMismatch,
  DegenerateImage,
  OddDegree,
  SingularCurve,
  EliminationDegenerate,
  NotSpaceCurve,
  SelfVerificationFailed,
  ParseError,
  InvalidInput,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonRegularPoint: return "NonRegularPoint";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonSquarefree: return "NonSquarefree";
    case ErrorKind::CommonFactor: return "CommonFactor";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::UnsupportedMultiplicity: return "UnsupportedMultiplicity";
    case ErrorKind::UnsupportedSystem: return "UnsupportedSystem";
    case ErrorKind::NoRationalPointFound: return "NoRationalPointFound";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::NonReducedInput: return "NonReducedInput";
    case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::EliminationDegenerate: return "EliminationDegenerate";
    case ErrorKind::NotSpaceCurve: return "NotSpaceCurve";
    case ErrorKind::SelfVerificationFailed: return "SelfVerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind tag,
/// so callers (and tests) can dispatch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace terracini
