#include "expdiff/error.hpp"

namespace expdiff {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Budget: return "BUDGET";
    case ErrorCode::NotInGamma: return "NOT_IN_GAMMA";
    case ErrorCode::SoundnessAlarm: return "SOUNDNESS_ALARM";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::NotDisjoint: return "NOT_DISJOINT";
    case ErrorCode::NonCommuting: return "NON_COMMUTING";
    case ErrorCode::DimTooSmall: return "DIM_TOO_SMALL";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::FVanishes: return "F_VANISHES";
    case ErrorCode::FactorizationIncomplete: return "FACTORIZATION_INCOMPLETE";
    case ErrorCode::PointNotOnU: return "POINT_NOT_ON_U";
    case ErrorCode::NoExtension: return "NO_EXTENSION";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace expdiff
