#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ibc {

enum class Errc {
  InvalidParams,
  InvalidArgument,
  MismatchedField,
  NonInvertible,
  WrongDegree,
  DegenerateRoots,
  ZeroDiscriminant,
  UnknownTag,
  BadMagic,
  BadVersion,
  UnknownType,
  Truncated,
  Malformed,
  IntegrityFailure,
  NoCandidateRoot,
  NoShiftSolution,
  AmbiguousAuth,
  DegenerateQuadruple,
  DegenerateDenominator,
  DistinctnessViolation,
  SamplingFailure,
  AmbiguousInit,
  UninitializedSession,
  NoSolution,
  InternalError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ibc
