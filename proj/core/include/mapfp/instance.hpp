#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mapfp/ratio.hpp"

namespace mapfp {

// A MAP / FP problem: n items with profit a_i and time b_i, split into m
// groups. Construct through validate_instance(); a live Instance always
// satisfies len(a) == len(b) >= 1, every entry >= 1 and m >= 1.
class Instance {
 public:
  std::size_t size() const noexcept { return profits_.size(); }
  std::size_t group_count() const noexcept { return groups_; }
  const std::vector<BigInt>& profits() const noexcept { return profits_; }
  const std::vector<BigInt>& times() const noexcept { return times_; }

  BigInt total_profit() const;
  BigInt total_time() const;

  bool operator==(const Instance&) const = default;

 private:
  friend Instance validate_instance(std::vector<BigInt>, std::vector<BigInt>, std::int64_t);
  Instance(std::vector<BigInt> a, std::vector<BigInt> b, std::size_t m)
      : profits_(std::move(a)), times_(std::move(b)), groups_(m) {}

  std::vector<BigInt> profits_;
  std::vector<BigInt> times_;
  std::size_t groups_ = 1;
};

// Throws Error{LengthMismatch | NonPositiveEntry | BadGroupCount}.
Instance validate_instance(std::vector<BigInt> a, std::vector<BigInt> b, std::int64_t m);

// (S, T). The denominator is always positive.
RatioForm total_ratio(const Instance& inst);

// Group index (0-based) of every item.
using Assignment = std::vector<std::size_t>;

struct GroupStats {
  std::vector<RatioForm> groups;
  Rational min_value;
};

// Throws Error{BadAssignment} when the length differs from n or an entry is
// not below m.
void check_assignment(const Instance& inst, const Assignment& asg);

// Per-group sums and the MAP objective min_j value(r_j). Empty groups are
// (0, 0) and contribute 0 to the minimum.
GroupStats evaluate(const Instance& inst, const Assignment& asg);

// True when every group is value-equal to `target` (an empty group never is,
// unless the target itself has value 0).
bool all_groups_equal(const GroupStats& stats, const RatioForm& target);

}  // namespace mapfp
