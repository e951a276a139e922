#pragma once

#include <cstdint>
#include <optional>

#include "mapfp/instance.hpp"

namespace mapfp::oracle {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct OracleResult {
  // MAP: exact maximum of min_j value(r_j) and the lexicographically first
  // assignment attaining it.
  Rational optimum;
  Assignment witness;
  // FP: whether some assignment puts every group, all nonempty, at S/T.
  bool fp_true = false;
  std::optional<Assignment> fp_witness;
  std::uint64_t assignments_enumerated = 0;
};

// m^n, saturating at UINT64_MAX.
std::uint64_t assignment_count(const Instance& inst);

// Enumerates all m^n assignments in lexicographic order (item 1 is the most
// significant digit). Throws Error{BudgetExceeded} when m^n > budget.
OracleResult solve(const Instance& inst, std::uint64_t budget = kDefaultEnumerationBudget);

OracleResult brute_force_map(const Instance& inst,
                             std::uint64_t budget = kDefaultEnumerationBudget);
OracleResult brute_force_fp(const Instance& inst,
                            std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace mapfp::oracle
