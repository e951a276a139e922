#include "mapfp/instance.hpp"

#include <algorithm>
#include <string>

#include "mapfp/error.hpp"

namespace mapfp {

namespace {

BigInt sum(const std::vector<BigInt>& xs) {
  BigInt total = 0;
  for (const auto& x : xs) total += x;
  return total;
}

}  // namespace

BigInt Instance::total_profit() const { return sum(profits_); }
BigInt Instance::total_time() const { return sum(times_); }

Instance validate_instance(std::vector<BigInt> a, std::vector<BigInt> b, std::int64_t m) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "profit and time sequences differ in length (" +
                                               std::to_string(a.size()) + " vs " +
                                               std::to_string(b.size()) + ")");
  }
  if (a.empty()) {
    throw Error(ErrorCode::LengthMismatch, "instance must contain at least one item");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || b[i] < 1) {
      throw Error(ErrorCode::NonPositiveEntry,
                  "item " + std::to_string(i + 1) + " has a non-positive entry");
    }
  }
  if (m < 1) {
    throw Error(ErrorCode::BadGroupCount, "group count must be at least 1, got " + std::to_string(m));
  }
  return Instance(std::move(a), std::move(b), static_cast<std::size_t>(m));
}

RatioForm total_ratio(const Instance& inst) {
  return RatioForm(inst.total_profit(), inst.total_time());
}

void check_assignment(const Instance& inst, const Assignment& asg) {
  if (asg.size() != inst.size()) {
    throw Error(ErrorCode::BadAssignment, "assignment has " + std::to_string(asg.size()) +
                                              " entries, instance has " +
                                              std::to_string(inst.size()) + " items");
  }
  const auto bad = std::find_if(asg.begin(), asg.end(),
                                [&](std::size_t g) { return g >= inst.group_count(); });
  if (bad != asg.end()) {
    throw Error(ErrorCode::BadAssignment,
                "item " + std::to_string(bad - asg.begin() + 1) + " assigned to group " +
                    std::to_string(*bad) + ", but m = " + std::to_string(inst.group_count()));
  }
}

GroupStats evaluate(const Instance& inst, const Assignment& asg) {
  check_assignment(inst, asg);
  GroupStats stats;
  stats.groups.resize(inst.group_count());
  for (std::size_t i = 0; i < asg.size(); ++i) {
    auto& g = stats.groups[asg[i]];
    g.num += inst.profits()[i];
    g.den += inst.times()[i];
  }
  const auto& smallest = *std::min_element(
      stats.groups.begin(), stats.groups.end(),
      [](const RatioForm& x, const RatioForm& y) { return value_compare(x, y) < 0; });
  stats.min_value = smallest.value();
  return stats;
}

bool all_groups_equal(const GroupStats& stats, const RatioForm& target) {
  return std::all_of(stats.groups.begin(), stats.groups.end(),
                     [&](const RatioForm& g) { return value_equal(g, target); });
}

}  // namespace mapfp
