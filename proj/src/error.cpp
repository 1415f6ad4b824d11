#include "tagnav/error.hpp"

namespace tagnav {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateResource: return "DuplicateResource";
    case ErrorCode::EmptyId: return "EmptyId";
    case ErrorCode::InvalidTag: return "InvalidTag";
    case ErrorCode::UnknownResource: return "UnknownResource";
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::EmptyCollection: return "EmptyCollection";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::CategoryConflict: return "CategoryConflict";
    case ErrorCode::UnknownCategoryTag: return "UnknownCategoryTag";
    case ErrorCode::StateLimitExceeded: return "StateLimitExceeded";
    case ErrorCode::InfeasibleTag: return "InfeasibleTag";
    case ErrorCode::AtRoot: return "AtRoot";
    case ErrorCode::StaleSession: return "StaleSession";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EngineFailure: return "EngineFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tagnav
