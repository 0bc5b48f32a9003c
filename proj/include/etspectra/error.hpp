#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etspectra {

enum class ErrorKind {
  // validation
  UsageError,
  UnknownModel,
  InvalidParameter,
  NonPositiveBias,
  UnsupportedModel,
  UnsupportedLevel,
  EmptyGrid,
  NonMonotoneGrid,
  NonUniformGrid,
  DomainViolation,
  NoBoundState,
  TooManyLevels,
  IoError,
  // numerical
  RootNotBracketed,
  NoConvergence,
  SingularPotentialOnGrid,
  EigensolverFailure,
  GridTooNarrow,
  QuadratureFailure,
  MinimizerNotBracketed,
};

std::string_view error_name(ErrorKind kind);

// True for failures of a numerical procedure, false for rejected input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace etspectra
