#include "densetop/error.hpp"

namespace densetop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NotAClosureOperator: return "NotAClosureOperator";
    case ErrorCode::EmptyF: return "EmptyF";
    case ErrorCode::FullF: return "FullF";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::FNotClosed: return "FNotClosed";
    case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::NonfiniteState: return "NonfiniteState";
    case ErrorCode::MisalignedSegments: return "MisalignedSegments";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::TooManyCells: return "TooManyCells";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace densetop
