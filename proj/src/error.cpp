#include "etspectra/error.hpp"

namespace etspectra {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NonPositiveBias: return "NonPositiveBias";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::NonMonotoneGrid: return "NonMonotoneGrid";
    case ErrorKind::NonUniformGrid: return "NonUniformGrid";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NoBoundState: return "NoBoundState";
    case ErrorKind::TooManyLevels: return "TooManyLevels";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularPotentialOnGrid: return "SingularPotentialOnGrid";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::MinimizerNotBracketed: return "MinimizerNotBracketed";
  }
  return "UnknownError";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RootNotBracketed:
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularPotentialOnGrid:
    case ErrorKind::EigensolverFailure:
    case ErrorKind::GridTooNarrow:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::MinimizerNotBracketed:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace etspectra
