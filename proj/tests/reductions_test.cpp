#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "mapfp/error.hpp"
#include "mapfp/reductions.hpp"
#include "support.hpp"

namespace mapfp::reductions {
namespace {

using testing::big;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

// Smallest L with L * two_n >= c + sqrt(c^2 + s), by binary search on the
// squared inequality; no square root is taken.
BigInt ceil_by_search(const BigInt& c, const BigInt& s, const BigInt& two_n) {
  auto ok = [&](const BigInt& l) {
    const BigInt lhs = l * two_n - c;
    return lhs >= 0 && lhs * lhs >= c * c + s;
  };
  BigInt lo = 0;
  BigInt hi = 1;
  while (!ok(hi)) hi *= 2;
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::size_t count(const std::vector<BigInt>& xs, long long v) {
  return static_cast<std::size_t>(std::count(xs.begin(), xs.end(), BigInt(v)));
}

TEST(CeilRatioWithSqrt, PerfectSquare) {
  EXPECT_EQ(ceil_ratio_with_sqrt(3, 16, 4), 2);
}

TEST(CeilRatioWithSqrt, IrrationalRoot) {
  EXPECT_EQ(ceil_ratio_with_sqrt(3, 17, 4), 3);
  EXPECT_EQ(ceil_ratio_with_sqrt(2870, 11664, 18), 320);
}

TEST(CeilRatioWithSqrt, AgreesWithSearchOracle) {
  SplitMix64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const BigInt c = rng.draw(5000);
    const BigInt s = rng.draw(i % 2 ? 100 : 1000000);
    const BigInt two_n = rng.draw(300);
    ASSERT_EQ(ceil_ratio_with_sqrt(c, s, two_n), ceil_by_search(c, s, two_n))
        << c << " " << s << " " << two_n;
  }
  // Perfect squares: c^2 + s = (c + k)^2.
  for (long long c = 1; c < 60; ++c) {
    for (long long k = 1; k < 20; ++k) {
      const BigInt s = 2 * c * k + k * k;
      for (long long two_n = 1; two_n < 12; ++two_n) {
        ASSERT_EQ(ceil_ratio_with_sqrt(c, s, two_n), ceil_by_search(c, s, two_n));
      }
    }
  }
}

TEST(CeilRatioWithSqrt, GadgetValuesAgreeWithSearchOracle) {
  // Q4 for D = {3,3,3,3,3,3}, m = 2: K = 9, N = 37.
  const BigInt n = 37;
  const BigInt c = 2 * 2 * n * n * n + 2 * 9 * n - 1;
  EXPECT_EQ(c, 203277);
  EXPECT_EQ(ceil_by_search(c, 8 * 2 * n * n * n, 2 * n), 5494);
  EXPECT_EQ(ceil_ratio_with_sqrt(c, 8 * 2 * n * n * n, 2 * n), 5494);
  EXPECT_EQ(ceil_by_search(2870, 11664, 18), 320);
}

TEST(PartitionSource, Validation) {
  EXPECT_EQ(make_partition_instance(big({1, 1, 2})).half, 2);
  EXPECT_EQ(code_of([] { make_partition_instance(big({1, 2})); }), ErrorCode::OddSourceSum);
  EXPECT_EQ(code_of([] { make_partition_instance(big({0, 2})); }), ErrorCode::NonPositiveEntry);
  EXPECT_EQ(code_of([] { make_partition_instance({}); }), ErrorCode::LengthMismatch);
}

TEST(ThreePartitionSource, Validation) {
  EXPECT_EQ(make_three_partition_instance(big({3, 3, 3, 3, 3, 3}), 2).target, 9);
  EXPECT_EQ(code_of([] { make_three_partition_instance(big({3, 3, 2, 4, 3, 3}), 2); }),
            ErrorCode::BoundViolation);
  EXPECT_EQ(code_of([] { make_three_partition_instance(big({3, 3, 3, 3, 3}), 2); }),
            ErrorCode::BadCardinality);
  EXPECT_EQ(code_of([] { make_three_partition_instance(big({3, 3, 3, 3, 3, 4}), 2); }),
            ErrorCode::BadDivisibility);
  // K = 12: 3 is exactly K/4 and 6 exactly K/2, both excluded.
  EXPECT_EQ(code_of([] { make_three_partition_instance(big({3, 4, 5, 4, 4, 4}), 2); }),
            ErrorCode::BoundViolation);
  EXPECT_EQ(code_of([] { make_three_partition_instance(big({6, 3, 3, 4, 4, 4}), 2); }),
            ErrorCode::BoundViolation);
}

TEST(GenerateQ2, SmallPartitionExample) {
  const auto gen = generate_q2(make_partition_instance(big({1, 1, 2})), 2);
  const auto& p = gen.params;
  EXPECT_EQ(p.kind, ReductionKind::Q2);
  EXPECT_EQ(p.K, 2);
  EXPECT_EQ(p.N, 9);
  EXPECT_EQ(p.L, 320);
  EXPECT_EQ(p.M, 10880);
  EXPECT_EQ(p.target, RatioForm(43537, 195874));
  EXPECT_EQ(scaled_delta(p), Rational(2));
  EXPECT_EQ(scaled_epsilon(p), Rational(34));

  const auto& a = gen.inst.profits();
  const auto& b = gen.inst.times();
  ASSERT_EQ(a.size(), 20u);
  EXPECT_EQ(std::vector<BigInt>(a.begin(), a.begin() + 3), big({10880, 10880, 21760}));
  EXPECT_EQ(count(a, 2), 11u);
  EXPECT_EQ(count(a, 3), 4u);
  EXPECT_EQ(a[18], 21760);
  EXPECT_EQ(a[19], 21760);
  EXPECT_EQ(count(b, 10880), 18u);
  EXPECT_EQ(b[18], 97954);
  EXPECT_EQ(b[19], 97954);
  EXPECT_EQ(total_ratio(gen.inst), RatioForm(87074, 391748));
  EXPECT_TRUE(identity_violations(gen).empty());
}

TEST(GenerateQ2, EqualHalvesExample) {
  const auto gen = generate_q2(make_partition_instance(big({2, 2})), 2);
  EXPECT_EQ(gen.params.L, 320);
  EXPECT_EQ(gen.params.M, 12160);
  const auto& a = gen.inst.profits();
  const auto& b = gen.inst.times();
  ASSERT_EQ(a.size(), 20u);
  EXPECT_EQ(count(a, 24320), 4u);
  EXPECT_EQ(count(a, 2), 10u);
  EXPECT_EQ(count(a, 3), 6u);
  EXPECT_EQ(count(b, 12160), 18u);
  EXPECT_EQ(count(b, 109478), 2u);
  EXPECT_TRUE(identity_violations(gen).empty());
}

TEST(GenerateQ2, ThreeGroupsAddsCompositeItem) {
  const auto src = make_partition_instance(big({1, 1, 2}));
  const auto two = generate_q2(src, 2);
  const auto three = generate_q2(src, 3);
  EXPECT_EQ(three.params.kind, ReductionKind::Q2Prime);
  ASSERT_EQ(three.inst.size(), 21u);
  EXPECT_TRUE(std::equal(two.inst.profits().begin(), two.inst.profits().end(),
                         three.inst.profits().begin()));
  EXPECT_EQ(three.inst.profits().back(), 43537);
  EXPECT_EQ(three.inst.times().back(), 195874);
  EXPECT_EQ(three.labels.back(), (ItemLabel{ProfitLabel::Composite, TimeLabel::Big}));
  EXPECT_TRUE(identity_violations(three).empty());
}

TEST(GenerateQ2, RejectsSingleGroup) {
  EXPECT_EQ(code_of([] { generate_q2(make_partition_instance(big({1, 1})), 1); }),
            ErrorCode::BadGroupCount);
}

TEST(LiftQ2, CertificateFromExample) {
  const auto src = make_partition_instance(big({1, 1, 2}));
  const auto gen = generate_q2(src, 2);
  const std::vector<std::size_t> subset{1, 2};
  const Assignment asg = lift_q2_certificate(src, subset, 2);

  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < asg.size(); ++i) {
    if (asg[i] == 0) first.push_back(i + 1);
  }
  EXPECT_EQ(first, (std::vector<std::size_t>{1, 2, 4, 5, 6, 7, 15, 16, 17, 19}));

  const GroupStats s = evaluate(gen.inst, asg);
  EXPECT_EQ(s.groups[0], RatioForm(43537, 195874));
  EXPECT_TRUE(all_groups_equal(s, total_ratio(gen.inst)));
}

TEST(LiftQ2, ThreeGroupCertificate) {
  const auto src = make_partition_instance(big({1, 1, 2}));
  const auto gen = generate_q2(src, 3);
  const std::vector<std::size_t> subset{1, 2};
  const Assignment asg = lift_q2_certificate(src, subset, 3);
  EXPECT_EQ(asg[20], 2u);
  EXPECT_EQ(std::count(asg.begin(), asg.end(), 2u), 1);
  const GroupStats s = evaluate(gen.inst, asg);
  EXPECT_EQ(s.groups[2], RatioForm(43537, 195874));
  EXPECT_TRUE(all_groups_equal(s, gen.params.target));
}

TEST(LiftQ2, RejectsBadWitness) {
  const auto src = make_partition_instance(big({1, 1, 2}));
  const std::vector<std::size_t> short_sum{1};
  const std::vector<std::size_t> repeated{3, 3};
  const std::vector<std::size_t> out_of_range{4};
  EXPECT_EQ(code_of([&] { lift_q2_certificate(src, short_sum, 2); }), ErrorCode::BadWitness);
  EXPECT_EQ(code_of([&] { lift_q2_certificate(src, repeated, 2); }), ErrorCode::BadWitness);
  EXPECT_EQ(code_of([&] { lift_q2_certificate(src, out_of_range, 2); }), ErrorCode::BadWitness);
}

TEST(GenerateQ4, UniformSourceExample) {
  const auto gen = generate_q4(make_three_partition_instance(big({3, 3, 3, 3, 3, 3}), 2));
  const auto& p = gen.params;
  EXPECT_EQ(p.kind, ReductionKind::Q4);
  EXPECT_EQ(p.K, 9);
  EXPECT_EQ(p.N, 37);
  EXPECT_EQ(p.L, 5494);
  EXPECT_EQ(p.M, 373592);
  EXPECT_EQ(scaled_delta(p), Rational(1));
  EXPECT_EQ(scaled_epsilon(p), Rational(68));

  const auto& a = gen.inst.profits();
  const auto& b = gen.inst.times();
  ASSERT_EQ(a.size(), 76u);
  EXPECT_EQ(count(a, 1120776), 6u);
  EXPECT_EQ(count(a, 1), 68u);
  EXPECT_EQ(count(a, 3362328), 2u);
  EXPECT_EQ(count(b, 373592), 74u);
  EXPECT_EQ(count(b, 13822972), 2u);
  EXPECT_EQ(total_ratio(gen.inst), RatioForm(13449380, 55291752));
  EXPECT_EQ(p.target, RatioForm(6724690, 27645876));
  EXPECT_TRUE(identity_violations(gen).empty());
}

TEST(LiftQ4, CertificateFromExample) {
  const auto src = make_three_partition_instance(big({3, 3, 3, 3, 3, 3}), 2);
  const auto gen = generate_q4(src);
  const Assignment asg = lift_q4_certificate(src, {{1, 2, 3}, {4, 5, 6}});

  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < asg.size(); ++i) {
    if (asg[i] == 0) first.push_back(i + 1);
  }
  std::vector<std::size_t> expected{1, 2, 3};
  for (std::size_t i = 7; i <= 40; ++i) expected.push_back(i);
  expected.push_back(75);
  EXPECT_EQ(first, expected);

  const GroupStats s = evaluate(gen.inst, asg);
  EXPECT_EQ(s.groups[0], RatioForm(6724690, 27645876));
  EXPECT_TRUE(all_groups_equal(s, total_ratio(gen.inst)));

  // Any split into triples works when all entries are equal.
  const Assignment other = lift_q4_certificate(src, {{1, 2, 4}, {3, 5, 6}});
  EXPECT_TRUE(all_groups_equal(evaluate(gen.inst, other), total_ratio(gen.inst)));
}

TEST(LiftQ4, RejectsBadWitness) {
  const auto src = make_three_partition_instance(big({3, 3, 3, 3, 3, 3}), 2);
  EXPECT_EQ(code_of([&] { lift_q4_certificate(src, {{1, 2}, {3, 4, 5, 6}}); }), ErrorCode::BadWitness);
  EXPECT_EQ(code_of([&] { lift_q4_certificate(src, {{1, 2, 3}}); }), ErrorCode::BadWitness);
  EXPECT_EQ(code_of([&] { lift_q4_certificate(src, {{1, 2, 3}, {3, 4, 5}}); }), ErrorCode::BadWitness);

  const auto uneven = make_three_partition_instance(big({5, 6, 7, 6, 6, 6}), 2);
  EXPECT_EQ(code_of([&] { lift_q4_certificate(uneven, {{1, 2, 4}, {3, 5, 6}}); }),
            ErrorCode::BadWitness);
  EXPECT_NO_THROW(lift_q4_certificate(uneven, {{1, 3, 4}, {2, 5, 6}}));
}

TEST(IdentityViolations, DetectsTampering) {
  auto gen = generate_q2(make_partition_instance(big({1, 1, 2})), 2);
  gen.params.L += 1;
  EXPECT_FALSE(identity_violations(gen).empty());

  auto gen4 = generate_q4(make_three_partition_instance(big({3, 3, 3, 3, 3, 3}), 2));
  gen4.labels[10].profit = ProfitLabel::MK;
  EXPECT_FALSE(identity_violations(gen4).empty());
}

// Every valid Partition witness of small random sources lifts to a
// certificate, and every generated gadget satisfies its identities.
TEST(ReductionProperties, PartitionCertificatesVerify) {
  SplitMix64 rng(99);
  int lifted = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng.next() % 6;
    std::vector<BigInt> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(rng.draw(9));
    BigInt total = 0;
    for (const auto& x : c) total += x;
    if (total % 2 != 0) c.back() += 1;
    const auto src = make_partition_instance(c);
    const std::size_t m = 2 + trial % 3;
    const auto gen = generate_q2(src, m);
    ASSERT_TRUE(identity_violations(gen).empty());

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> subset;
      BigInt s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          subset.push_back(i + 1);
          s += src.c[i];
        }
      }
      if (s != src.half) continue;
      const Assignment asg = lift_q2_certificate(src, subset, m);
      ASSERT_TRUE(all_groups_equal(evaluate(gen.inst, asg), total_ratio(gen.inst)));
      ++lifted;
    }
  }
  EXPECT_GT(lifted, 20);
}

}  // namespace
}  // namespace mapfp::reductions
