#include "mapfp/oracle.hpp"

#include <limits>
#include <string>

#include "mapfp/error.hpp"

namespace mapfp::oracle {

std::uint64_t assignment_count(const Instance& inst) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t m = inst.group_count();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (count > kMax / m) return kMax;
    count *= m;
  }
  return count;
}

OracleResult solve(const Instance& inst, std::uint64_t budget) {
  const std::uint64_t total = assignment_count(inst);
  if (total > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "brute force needs m^n = " + (total == std::numeric_limits<std::uint64_t>::max()
                                                   ? std::string("> 2^64")
                                                   : std::to_string(total)) +
                    " assignments, budget is " + std::to_string(budget));
  }

  const std::size_t n = inst.size();
  const std::size_t m = inst.group_count();
  const RatioForm overall = total_ratio(inst);

  OracleResult result;
  std::optional<RatioForm> best;
  Assignment current(n, 0);
  std::vector<RatioForm> groups(m);

  for (;;) {
    for (auto& g : groups) g = RatioForm();
    for (std::size_t i = 0; i < n; ++i) {
      groups[current[i]].num += inst.profits()[i];
      groups[current[i]].den += inst.times()[i];
    }

    const RatioForm* smallest = &groups.front();
    bool every_group_at_target = true;
    for (const auto& g : groups) {
      if (value_compare(g, *smallest) < 0) smallest = &g;
      if (g.den == 0 || !value_equal(g, overall)) every_group_at_target = false;
    }

    if (!best || value_compare(*smallest, *best) > 0) {
      best = *smallest;
      result.witness = current;
    }
    if (every_group_at_target && !result.fp_true) {
      result.fp_true = true;
      result.fp_witness = current;
    }
    ++result.assignments_enumerated;

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++current[pos] < m) break;
      current[pos] = 0;
      if (pos == 0) {
        result.optimum = best->value();
        return result;
      }
    }
  }
}

OracleResult brute_force_map(const Instance& inst, std::uint64_t budget) {
  return solve(inst, budget);
}

OracleResult brute_force_fp(const Instance& inst, std::uint64_t budget) {
  return solve(inst, budget);
}

}  // namespace mapfp::oracle
