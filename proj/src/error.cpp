#include "ibc/error.hpp"

namespace ibc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MismatchedField: return "MismatchedField";
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::DegenerateRoots: return "DegenerateRoots";
    case Errc::ZeroDiscriminant: return "ZeroDiscriminant";
    case Errc::UnknownTag: return "UnknownTag";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::UnknownType: return "UnknownType";
    case Errc::Truncated: return "Truncated";
    case Errc::Malformed: return "Malformed";
    case Errc::IntegrityFailure: return "IntegrityFailure";
    case Errc::NoCandidateRoot: return "NoCandidateRoot";
    case Errc::NoShiftSolution: return "NoShiftSolution";
    case Errc::AmbiguousAuth: return "AmbiguousAuth";
    case Errc::DegenerateQuadruple: return "DegenerateQuadruple";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::DistinctnessViolation: return "DistinctnessViolation";
    case Errc::SamplingFailure: return "SamplingFailure";
    case Errc::AmbiguousInit: return "AmbiguousInit";
    case Errc::UninitializedSession: return "UninitializedSession";
    case Errc::NoSolution: return "NoSolution";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace ibc
