#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapfp {

enum class ErrorCode {
  LengthMismatch,
  NonPositiveEntry,
  BadGroupCount,
  BadAssignment,
  BudgetExceeded,
  MemoryBudgetExceeded,
  OddSourceSum,
  BadCardinality,
  BadDivisibility,
  BoundViolation,
  BadWitness,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mapfp
