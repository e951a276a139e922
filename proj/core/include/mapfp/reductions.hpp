#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapfp/instance.hpp"

namespace mapfp::reductions {

// Partition source: split c into two halves of sum K = (sum c) / 2.
struct PartitionInstance {
  std::vector<BigInt> c;
  BigInt half;  // K
};

// Throws Error{LengthMismatch (empty) | NonPositiveEntry | OddSourceSum}.
PartitionInstance make_partition_instance(std::vector<BigInt> c);

// 3-Partition source: 3m integers, each strictly between K/4 and K/2, where
// K = (sum d) / m.
struct ThreePartitionInstance {
  std::vector<BigInt> d;
  std::size_t groups = 0;  // m
  BigInt target;           // K
};

// Throws Error{BadGroupCount | BadCardinality | NonPositiveEntry |
// BadDivisibility | BoundViolation}.
ThreePartitionInstance make_three_partition_instance(std::vector<BigInt> d, std::size_t m);

enum class ReductionKind { Q2, Q2Prime, Q4 };
std::string_view to_string(ReductionKind kind) noexcept;
ReductionKind parse_reduction_kind(std::string_view text);

struct ReductionParams {
  ReductionKind kind = ReductionKind::Q2;
  BigInt K;
  BigInt N;
  BigInt L;  // ceil(1/eps'), so eps = 1/L
  BigInt M;
  // Common ratio of every group in a certificate, in M-scaled integers.
  RatioForm target;
  // Size of the source instance (n for Partition, 3m for 3-Partition).
  std::size_t source_size = 0;
  std::size_t groups = 0;

  bool operator==(const ReductionParams&) const = default;
};

// M * eps and M * delta, derived from the parameters by exact rational
// arithmetic (both are integers for a well-formed construction).
Rational scaled_epsilon(const ReductionParams& params);
Rational scaled_delta(const ReductionParams& params);

enum class ProfitLabel { ScaledSource, Delta, Delta32, MK, Composite };
enum class TimeLabel { UnitM, Big };

struct ItemLabel {
  ProfitLabel profit = ProfitLabel::ScaledSource;
  TimeLabel time = TimeLabel::UnitM;
  bool operator==(const ItemLabel&) const = default;
};

std::string_view to_string(ProfitLabel label) noexcept;
std::string_view to_string(TimeLabel label) noexcept;
ProfitLabel parse_profit_label(std::string_view text);
TimeLabel parse_time_label(std::string_view text);

struct GeneratedInstance {
  Instance inst;
  ReductionParams params;
  std::vector<ItemLabel> labels;
};

// ceil((c + sqrt(c^2 + s)) / two_n), exact. All arguments must be >= 1.
BigInt ceil_ratio_with_sqrt(const BigInt& c, const BigInt& s, const BigInt& two_n);

// Partition -> FP with m groups (Q2 for m = 2, Q2' for m > 2). Item layout,
// 1-based: sources 1..n, DELTA n+1..N+2n-1, DELTA_3_2 N+2n..2N, MK at 2N+1
// and 2N+2, COMPOSITE 2N+3..2N+m. Throws Error{BadGroupCount} for m < 2.
GeneratedInstance generate_q2(const PartitionInstance& src, std::size_t m);

// `subset` holds 1-based indices into c whose values sum to K.
// Throws Error{BadWitness}.
Assignment lift_q2_certificate(const PartitionInstance& src, std::span<const std::size_t> subset,
                               std::size_t m);

// 3-Partition -> FP. Item layout, 1-based: sources 1..3m, DELTA 3m+1..mN,
// MK at mN+1..mN+m.
GeneratedInstance generate_q4(const ThreePartitionInstance& src);

// `triples[j]` holds the 1-based source indices of group j; every triple must
// sum to K and the triples must partition 1..3m. Throws Error{BadWitness}.
Assignment lift_q4_certificate(const ThreePartitionInstance& src,
                               const std::vector<std::vector<std::size_t>>& triples);

// Checks the structural identities of a generated gadget (label counts,
// literal delta values, delta-block sum = M*eps, coprimality, target = S/T).
// Returns a human-readable description of every violation; empty when sound.
std::vector<std::string> identity_violations(const GeneratedInstance& gen);

}  // namespace mapfp::reductions
