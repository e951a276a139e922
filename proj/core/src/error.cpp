#include "mapfp/error.hpp"

namespace mapfp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::BadGroupCount: return "BadGroupCount";
    case ErrorCode::BadAssignment: return "BadAssignment";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::OddSourceSum: return "OddSourceSum";
    case ErrorCode::BadCardinality: return "BadCardinality";
    case ErrorCode::BadDivisibility: return "BadDivisibility";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::BadWitness: return "BadWitness";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mapfp
