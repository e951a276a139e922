#include "mapfp/reductions.hpp"

#include <algorithm>
#include <string>

#include <boost/multiprecision/integer.hpp>

#include "mapfp/error.hpp"

namespace mapfp::reductions {

namespace {

BigInt sum(const std::vector<BigInt>& xs) {
  BigInt total = 0;
  for (const auto& x : xs) total += x;
  return total;
}

BigInt cube(const BigInt& x) { return x * x * x; }

[[noreturn]] void bad_witness(const std::string& why) { throw Error(ErrorCode::BadWitness, why); }

std::size_t count_profit(const GeneratedInstance& gen, ProfitLabel label) {
  return static_cast<std::size_t>(std::count_if(gen.labels.begin(), gen.labels.end(),
                                                [&](const ItemLabel& l) { return l.profit == label; }));
}

std::size_t count_time(const GeneratedInstance& gen, TimeLabel label) {
  return static_cast<std::size_t>(std::count_if(gen.labels.begin(), gen.labels.end(),
                                                [&](const ItemLabel& l) { return l.time == label; }));
}

// 5N - 4n + 1 for Q2/Q2', mN - 3m for Q4.
BigInt epsilon_numerator(const ReductionParams& p) {
  if (p.kind == ReductionKind::Q4) {
    const BigInt m = p.groups;
    return m * p.N - 3 * m;
  }
  return 5 * p.N - 4 * BigInt(p.source_size) + 1;
}

}  // namespace

PartitionInstance make_partition_instance(std::vector<BigInt> c) {
  if (c.empty()) throw Error(ErrorCode::LengthMismatch, "partition source is empty");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1) {
      throw Error(ErrorCode::NonPositiveEntry,
                  "partition entry " + std::to_string(i + 1) + " is not positive");
    }
  }
  const BigInt total = sum(c);
  if (total % 2 != 0) {
    throw Error(ErrorCode::OddSourceSum, "partition source sum " + total.str() + " is odd");
  }
  return PartitionInstance{std::move(c), total / 2};
}

ThreePartitionInstance make_three_partition_instance(std::vector<BigInt> d, std::size_t m) {
  if (m < 1) throw Error(ErrorCode::BadGroupCount, "3-partition needs m >= 1");
  if (d.size() != 3 * m) {
    throw Error(ErrorCode::BadCardinality, "3-partition source has " + std::to_string(d.size()) +
                                               " entries, expected 3m = " + std::to_string(3 * m));
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) {
      throw Error(ErrorCode::NonPositiveEntry,
                  "3-partition entry " + std::to_string(i + 1) + " is not positive");
    }
  }
  const BigInt total = sum(d);
  if (total % m != 0) {
    throw Error(ErrorCode::BadDivisibility,
                "3-partition sum " + total.str() + " is not divisible by m = " + std::to_string(m));
  }
  const BigInt k = total / m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(4 * d[i] > k && 2 * d[i] < k)) {
      throw Error(ErrorCode::BoundViolation, "entry " + std::to_string(i + 1) + " = " +
                                                 d[i].str() + " is not strictly between K/4 and K/2 (K = " +
                                                 k.str() + ")");
    }
  }
  return ThreePartitionInstance{std::move(d), m, k};
}

std::string_view to_string(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::Q2: return "Q2";
    case ReductionKind::Q2Prime: return "Q2'";
    case ReductionKind::Q4: return "Q4";
  }
  return "?";
}

ReductionKind parse_reduction_kind(std::string_view text) {
  if (text == "Q2") return ReductionKind::Q2;
  if (text == "Q2'") return ReductionKind::Q2Prime;
  if (text == "Q4") return ReductionKind::Q4;
  throw Error(ErrorCode::ParseError, "unknown reduction kind '" + std::string(text) + "'");
}

std::string_view to_string(ProfitLabel label) noexcept {
  switch (label) {
    case ProfitLabel::ScaledSource: return "SCALED_SOURCE";
    case ProfitLabel::Delta: return "DELTA";
    case ProfitLabel::Delta32: return "DELTA_3_2";
    case ProfitLabel::MK: return "MK";
    case ProfitLabel::Composite: return "COMPOSITE";
  }
  return "?";
}

std::string_view to_string(TimeLabel label) noexcept {
  return label == TimeLabel::UnitM ? "UNIT_M" : "BIG";
}

ProfitLabel parse_profit_label(std::string_view text) {
  for (auto l : {ProfitLabel::ScaledSource, ProfitLabel::Delta, ProfitLabel::Delta32,
                 ProfitLabel::MK, ProfitLabel::Composite}) {
    if (text == to_string(l)) return l;
  }
  throw Error(ErrorCode::ParseError, "unknown profit label '" + std::string(text) + "'");
}

TimeLabel parse_time_label(std::string_view text) {
  if (text == "UNIT_M") return TimeLabel::UnitM;
  if (text == "BIG") return TimeLabel::Big;
  throw Error(ErrorCode::ParseError, "unknown time label '" + std::string(text) + "'");
}

Rational scaled_epsilon(const ReductionParams& params) {
  return Rational(params.M, params.L);
}

Rational scaled_delta(const ReductionParams& params) {
  const Rational eps(1, params.L);
  const Rational m(params.M);
  if (params.kind == ReductionKind::Q4) return m * eps / Rational(epsilon_numerator(params));
  return m * 2 * eps / Rational(epsilon_numerator(params));
}

BigInt ceil_ratio_with_sqrt(const BigInt& c, const BigInt& s, const BigInt& two_n) {
  if (c < 1 || s < 1 || two_n < 1) {
    throw Error(ErrorCode::ValidationError, "ceil_ratio_with_sqrt needs positive arguments");
  }
  const BigInt radicand = c * c + s;
  const BigInt root = boost::multiprecision::sqrt(radicand);
  const BigInt low = c + root;
  if (root * root == radicand) return (low + two_n - 1) / two_n;
  // (c + sqrt(x)) / 2N lies strictly inside ((c+u)/2N, (c+u+1)/2N), an open
  // interval that contains no integer multiple of 1/2N, let alone an integer.
  return low / two_n + 1;
}

GeneratedInstance generate_q2(const PartitionInstance& src, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::BadGroupCount, "partition reduction needs m >= 2");
  const std::size_t n = src.c.size();
  const BigInt& k = src.half;
  const BigInt big_n = 4 * k + 1;
  const BigInt c = 4 * cube(big_n) + 2 * k * big_n - big_n * big_n - 1;
  const BigInt l = ceil_ratio_with_sqrt(c, 16 * cube(big_n), 2 * big_n);
  const BigInt eps_scaled = 5 * big_n - 4 * BigInt(n) + 1;  // M * eps, even
  const BigInt big_m = eps_scaled * l;

  const auto delta_count = static_cast<std::size_t>(big_n + n - 1);
  const auto delta32_count = static_cast<std::size_t>(big_n - 2 * BigInt(n) + 1);
  const auto unit_count = static_cast<std::size_t>(2 * big_n);

  std::vector<BigInt> a;
  std::vector<BigInt> b;
  std::vector<ItemLabel> labels;
  const std::size_t total_items = unit_count + m;
  a.reserve(total_items);
  b.reserve(total_items);
  labels.reserve(total_items);

  auto push_a = [&](const BigInt& v, ProfitLabel label) {
    a.push_back(v);
    labels.push_back({label, TimeLabel::UnitM});
  };
  for (const auto& ci : src.c) push_a(big_m * ci, ProfitLabel::ScaledSource);
  for (std::size_t i = 0; i < delta_count; ++i) push_a(2, ProfitLabel::Delta);
  for (std::size_t i = 0; i < delta32_count; ++i) push_a(3, ProfitLabel::Delta32);
  for (std::size_t i = 0; i < unit_count; ++i) b.push_back(big_m);

  const BigInt big_time = big_m * big_n + eps_scaled;
  for (int i = 0; i < 2; ++i) {
    a.push_back(big_m * k);
    b.push_back(big_time);
    labels.push_back({ProfitLabel::MK, TimeLabel::Big});
  }
  const BigInt target_num = 2 * big_m * k + eps_scaled / 2;
  const BigInt target_den = 2 * big_m * big_n + eps_scaled;
  for (std::size_t j = 2; j < m; ++j) {
    a.push_back(target_num);
    b.push_back(target_den);
    labels.push_back({ProfitLabel::Composite, TimeLabel::Big});
  }

  ReductionParams params;
  params.kind = m == 2 ? ReductionKind::Q2 : ReductionKind::Q2Prime;
  params.K = k;
  params.N = big_n;
  params.L = l;
  params.M = big_m;
  params.target = RatioForm(target_num, target_den);
  params.source_size = n;
  params.groups = m;

  return GeneratedInstance{validate_instance(std::move(a), std::move(b), static_cast<std::int64_t>(m)),
                           std::move(params), std::move(labels)};
}

Assignment lift_q2_certificate(const PartitionInstance& src, std::span<const std::size_t> subset,
                               std::size_t m) {
  if (m < 2) throw Error(ErrorCode::BadGroupCount, "partition reduction needs m >= 2");
  const std::size_t n = src.c.size();
  std::vector<bool> chosen(n, false);
  BigInt picked = 0;
  for (const std::size_t idx : subset) {
    if (idx < 1 || idx > n) bad_witness("witness index " + std::to_string(idx) + " out of range");
    if (chosen[idx - 1]) bad_witness("witness index " + std::to_string(idx) + " repeated");
    chosen[idx - 1] = true;
    picked += src.c[idx - 1];
  }
  if (picked != src.half) {
    bad_witness("witness sums to " + picked.str() + ", expected K = " + src.half.str());
  }

  const std::size_t n1 = subset.size();
  const std::size_t n2 = n - n1;
  const auto big_n = static_cast<std::size_t>(4 * src.half + 1);
  const std::size_t items = 2 * big_n + m;

  // Group 0 is I_1 of the certificate, group 1 its complement within
  // 1..2N+2, group j >= 2 the composite item 2N+j+1.
  Assignment asg(items, 1);
  auto to_first = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i <= hi; ++i) asg[i - 1] = 0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (chosen[i]) asg[i] = 0;
  }
  to_first(n + 1, (big_n - 1) / 2 + 3 * n2);
  to_first(big_n + 2 * n, (3 * big_n - 1) / 2 + 2 * n1);
  to_first(2 * big_n + 1, 2 * big_n + 1);
  for (std::size_t j = 2; j < m; ++j) asg[2 * big_n + j] = j;
  return asg;
}

GeneratedInstance generate_q4(const ThreePartitionInstance& src) {
  const std::size_t m = src.groups;
  const BigInt bm = m;
  const BigInt& k = src.target;
  const BigInt big_n = 2 * bm * k + 1;
  const BigInt c = 2 * bm * cube(big_n) + bm * k * big_n - 1;
  const BigInt l = ceil_ratio_with_sqrt(c, 8 * bm * cube(big_n), 2 * big_n);
  const BigInt eps_scaled = bm * big_n - 3 * bm;  // M * eps
  const BigInt big_m = eps_scaled * l;

  const auto delta_count = static_cast<std::size_t>(eps_scaled);
  const auto unit_count = static_cast<std::size_t>(bm * big_n);

  std::vector<BigInt> a;
  std::vector<BigInt> b;
  std::vector<ItemLabel> labels;
  a.reserve(unit_count + m);
  b.reserve(unit_count + m);
  labels.reserve(unit_count + m);

  for (const auto& di : src.d) {
    a.push_back(big_m * di);
    labels.push_back({ProfitLabel::ScaledSource, TimeLabel::UnitM});
  }
  for (std::size_t i = 0; i < delta_count; ++i) {
    a.push_back(1);
    labels.push_back({ProfitLabel::Delta, TimeLabel::UnitM});
  }
  for (std::size_t i = 0; i < unit_count; ++i) b.push_back(big_m);
  const BigInt big_time = big_m * big_n + eps_scaled;
  for (std::size_t j = 0; j < m; ++j) {
    a.push_back(big_m * k);
    b.push_back(big_time);
    labels.push_back({ProfitLabel::MK, TimeLabel::Big});
  }

  ReductionParams params;
  params.kind = ReductionKind::Q4;
  params.K = k;
  params.N = big_n;
  params.L = l;
  params.M = big_m;
  params.target = RatioForm(2 * big_m * k + eps_scaled / bm, 2 * big_m * big_n + eps_scaled);
  params.source_size = src.d.size();
  params.groups = m;

  return GeneratedInstance{validate_instance(std::move(a), std::move(b), static_cast<std::int64_t>(m)),
                           std::move(params), std::move(labels)};
}

Assignment lift_q4_certificate(const ThreePartitionInstance& src,
                               const std::vector<std::vector<std::size_t>>& triples) {
  const std::size_t m = src.groups;
  if (triples.size() != m) {
    bad_witness("witness has " + std::to_string(triples.size()) + " groups, expected m = " +
                std::to_string(m));
  }
  std::vector<bool> seen(3 * m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (triples[j].size() != 3) {
      bad_witness("witness group " + std::to_string(j + 1) + " has " +
                  std::to_string(triples[j].size()) + " elements, expected 3");
    }
    BigInt total = 0;
    for (const std::size_t idx : triples[j]) {
      if (idx < 1 || idx > 3 * m) bad_witness("witness index " + std::to_string(idx) + " out of range");
      if (seen[idx - 1]) bad_witness("witness index " + std::to_string(idx) + " repeated");
      seen[idx - 1] = true;
      total += src.d[idx - 1];
    }
    if (total != src.target) {
      bad_witness("witness group " + std::to_string(j + 1) + " sums to " + total.str() +
                  ", expected K = " + src.target.str());
    }
  }

  const auto big_n = static_cast<std::size_t>(2 * BigInt(m) * src.target + 1);
  Assignment asg(m * (big_n + 1), 0);
  for (std::size_t j = 1; j <= m; ++j) {
    for (const std::size_t idx : triples[j - 1]) asg[idx - 1] = j - 1;
    for (std::size_t i = 3 * m + (j - 1) * (big_n - 3) + 1; i <= 3 * m + j * (big_n - 3); ++i) {
      asg[i - 1] = j - 1;
    }
    asg[m * big_n + j - 1] = j - 1;
  }
  return asg;
}

std::vector<std::string> identity_violations(const GeneratedInstance& gen) {
  std::vector<std::string> out;
  const auto& p = gen.params;
  const auto& inst = gen.inst;
  const BigInt n = p.source_size;
  const BigInt m = p.groups;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
  };

  expect(gen.labels.size() == inst.size(), "label count differs from item count");
  expect(inst.group_count() == p.groups, "instance m differs from params");
  if (!out.empty()) return out;

  const BigInt eps_num = epsilon_numerator(p);
  const Rational m_eps = scaled_epsilon(p);
  const Rational m_delta = scaled_delta(p);
  expect(m_eps == Rational(eps_num), "M*eps != " + eps_num.str());
  expect(p.M == eps_num * p.L, "M != (M*eps) * L");

  BigInt delta_sum = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& l = gen.labels[i];
    const BigInt& ai = inst.profits()[i];
    const BigInt& bi = inst.times()[i];
    if (l.profit == ProfitLabel::Delta) {
      expect(Rational(ai) == m_delta, "DELTA item " + std::to_string(i + 1) + " != M*delta");
      delta_sum += ai;
    } else if (l.profit == ProfitLabel::Delta32) {
      expect(Rational(ai) == m_delta * 3 / 2, "DELTA_3_2 item " + std::to_string(i + 1) + " != 3M*delta/2");
      delta_sum += ai;
    } else if (l.profit == ProfitLabel::MK) {
      expect(ai == p.M * p.K, "MK item " + std::to_string(i + 1) + " != M*K");
    } else if (l.profit == ProfitLabel::Composite) {
      expect(ai == p.target.num, "COMPOSITE item " + std::to_string(i + 1) + " != target numerator");
    } else {
      expect(ai % p.M == 0, "source item " + std::to_string(i + 1) + " not a multiple of M");
    }
    if (l.time == TimeLabel::UnitM) {
      expect(bi == p.M, "UNIT_M item " + std::to_string(i + 1) + " != M");
    } else if (l.profit == ProfitLabel::Composite) {
      expect(bi == p.target.den, "COMPOSITE time " + std::to_string(i + 1) + " != target denominator");
    } else {
      expect(bi == p.M * p.N + eps_num, "BIG item " + std::to_string(i + 1) + " != MN + M*eps");
    }
  }
  expect(Rational(delta_sum) == m_eps, "delta block sums to " + delta_sum.str() + ", not M*eps");

  const std::size_t sources = count_profit(gen, ProfitLabel::ScaledSource);
  const std::size_t deltas = count_profit(gen, ProfitLabel::Delta);
  const std::size_t deltas32 = count_profit(gen, ProfitLabel::Delta32);
  const std::size_t mks = count_profit(gen, ProfitLabel::MK);
  const std::size_t composites = count_profit(gen, ProfitLabel::Composite);
  const std::size_t units = count_time(gen, TimeLabel::UnitM);

  if (p.kind == ReductionKind::Q4) {
    expect(p.N == 2 * m * p.K + 1, "N != 2mK + 1");
    expect(m_delta == 1, "M*delta != 1");
    expect(boost::multiprecision::gcd(p.N, m * p.K) == 1, "gcd(N, mK) != 1");
    const BigInt c = 2 * m * cube(p.N) + m * p.K * p.N - 1;
    expect(p.L == ceil_ratio_with_sqrt(c, 8 * m * cube(p.N), 2 * p.N), "L != ceil(1/eps')");
    expect(sources == 3 * p.groups, "Q4 needs 3m sources");
    expect(BigInt(deltas) == m * p.N - 3 * m, "Q4 needs mN - 3m DELTA items");
    expect(deltas32 == 0 && composites == 0, "Q4 has no DELTA_3_2 or COMPOSITE items");
    expect(mks == p.groups, "Q4 needs m MK items");
    expect(BigInt(units) == m * p.N, "Q4 needs mN UNIT_M items");
  } else {
    expect(p.kind == (p.groups == 2 ? ReductionKind::Q2 : ReductionKind::Q2Prime),
           "kind does not match m");
    expect(p.N == 4 * p.K + 1, "N != 4K + 1");
    expect(m_delta == 2, "M*delta != 2");
    expect(boost::multiprecision::gcd(p.N, 2 * p.K) == 1, "gcd(N, 2K) != 1");
    expect(p.N >= 2 * n + 1, "N < 2n + 1");
    const BigInt c = 4 * cube(p.N) + 2 * p.K * p.N - p.N * p.N - 1;
    expect(p.L == ceil_ratio_with_sqrt(c, 16 * cube(p.N), 2 * p.N), "L != ceil(1/eps')");
    expect(BigInt(sources) == n, "Q2 needs n sources");
    expect(BigInt(deltas) == p.N + n - 1, "Q2 needs N + n - 1 DELTA items");
    expect(BigInt(deltas32) == p.N - 2 * n + 1, "Q2 needs N - 2n + 1 DELTA_3_2 items");
    expect(mks == 2, "Q2 needs 2 MK items");
    expect(composites == p.groups - 2, "Q2 needs m - 2 COMPOSITE items");
    expect(BigInt(units) == 2 * p.N, "Q2 needs 2N UNIT_M items");
  }

  const RatioForm overall = total_ratio(inst);
  expect(value_equal(p.target, overall), "target value differs from S/T");
  expect(m * p.target.num == overall.num && m * p.target.den == overall.den,
         "m * target != (S, T)");
  return out;
}

}  // namespace mapfp::reductions
