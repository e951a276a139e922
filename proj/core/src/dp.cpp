#include "mapfp/dp.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "mapfp/error.hpp"

namespace mapfp::dp {

namespace {

__extension__ using u128 = unsigned __int128;

template <class Num>
struct Arith;

template <>
struct Arith<std::uint64_t> {
  using Product = u128;
  static std::uint64_t from(const BigInt& x) { return static_cast<std::uint64_t>(x); }
  static BigInt to_big(std::uint64_t x) { return BigInt(x); }
  static Product mul(std::uint64_t x, std::uint64_t y) { return static_cast<u128>(x) * y; }
  static std::uint64_t hash_word(std::uint64_t x) { return x; }
};

template <>
struct Arith<BigInt> {
  using Product = BigInt;
  static BigInt from(const BigInt& x) { return x; }
  static BigInt to_big(const BigInt& x) { return x; }
  static Product mul(const BigInt& x, const BigInt& y) { return x * y; }
  static std::uint64_t hash_word(const BigInt& x) {
    static const BigInt kMask = BigInt(std::numeric_limits<std::uint64_t>::max());
    return static_cast<std::uint64_t>(x & kMask);
  }
};

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

// Sparse realization of the layered reachability tables.
//
// Layers are nested (the "stay" transition keeps every state), so a single
// append-only table is enough: layer i is the prefix of states discovered
// while processing items 1..i. Each state records the layer it first appeared
// in and the edge that produced it; a state inherited from an earlier layer
// implicitly has the "stay" edge.
template <class Num>
class Engine {
 public:
  using A = Arith<Num>;
  using Product = typename A::Product;

  Engine(const Instance& inst, const Options& options)
      : n_(inst.size()),
        pairs_(inst.group_count() - 1),
        stride_(2 * pairs_),
        canonicalize_(options.canonicalize),
        budget_(std::min<std::uint64_t>(options.state_budget, kIndexLimit)) {
    profits_.reserve(n_);
    times_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      profits_.push_back(A::from(inst.profits()[i]));
      times_.push_back(A::from(inst.times()[i]));
    }
    total_profit_ = A::from(inst.total_profit());
    total_time_ = A::from(inst.total_time());

    slots_.assign(1024, kEmpty);
    scratch_.assign(stride_, Num(0));
    insert(scratch_, kEmpty, kStay, 0);
    layer_sizes_.push_back(1);
  }

  std::size_t item_count() const { return n_; }
  std::size_t state_count() const { return birth_.size(); }
  std::size_t layers() const { return layer_sizes_.size(); }
  std::size_t layer_size(std::size_t layer) const { return layer_sizes_[layer]; }

  // Processes item `item` (1-based, 1 <= item <= n-1) and closes its layer.
  void expand(std::size_t item) {
    const Num& a = profits_[item - 1];
    const Num& b = times_[item - 1];
    const std::size_t previous = state_count();
    for (std::size_t s = 0; s < previous; ++s) {
      for (std::size_t k = 0; k < pairs_; ++k) {
        std::copy_n(data_.begin() + s * stride_, stride_, scratch_.begin());
        scratch_[2 * k] += a;
        scratch_[2 * k + 1] += b;
        if (canonicalize_) sift_right(scratch_, k);
        insert(scratch_, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(k + 1),
               static_cast<std::uint32_t>(item));
      }
    }
    layer_sizes_.push_back(state_count());
  }

  // FP certificate test: every tracked pair and the untracked remainder is
  // value-equal to S/T with a positive denominator.
  bool certifies_fp(std::size_t s) const {
    const Num* st = state(s);
    Num rest_p = total_profit_;
    Num rest_q = total_time_;
    for (std::size_t k = 0; k < pairs_; ++k) {
      const Num& p = st[2 * k];
      const Num& q = st[2 * k + 1];
      if (q == 0) return false;
      if (A::mul(p, total_time_) != A::mul(q, total_profit_)) return false;
      rest_p -= p;
      rest_q -= q;
    }
    return rest_q != 0 && A::mul(rest_p, total_time_) == A::mul(rest_q, total_profit_);
  }

  // g(F): min of all tracked values and the remainder value, p/0 counting as
  // zero. Returned as a fraction with positive denominator.
  std::pair<Num, Num> objective(std::size_t s) const {
    const Num* st = state(s);
    Num rest_p = total_profit_;
    Num rest_q = total_time_;
    std::pair<Num, Num> best{rest_p, rest_q};
    bool have_best = false;
    for (std::size_t k = 0; k < pairs_; ++k) {
      std::pair<Num, Num> v = normalized(st[2 * k], st[2 * k + 1]);
      rest_p -= st[2 * k];
      rest_q -= st[2 * k + 1];
      if (!have_best || less(v, best)) {
        best = std::move(v);
        have_best = true;
      }
    }
    std::pair<Num, Num> rest = normalized(rest_p, rest_q);
    if (!have_best || less(rest, best)) best = std::move(rest);
    return best;
  }

  static bool less(const std::pair<Num, Num>& x, const std::pair<Num, Num>& y) {
    return A::mul(x.first, y.second) < A::mul(y.first, x.second);
  }

  // Replays the parent chain of state `s` forward from the root, tracking
  // which original group label sits in each (possibly re-sorted) slot.
  Assignment trace(std::size_t s) const {
    std::vector<std::pair<std::size_t, std::size_t>> steps;  // (item, slot)
    for (std::size_t cur = s; cur != 0; cur = parent_[cur]) {
      steps.emplace_back(birth_[cur], choice_[cur] - 1);
    }
    std::reverse(steps.begin(), steps.end());

    Assignment asg(n_, pairs_);
    std::vector<Num> tuple(stride_, Num(0));
    std::vector<std::size_t> labels(pairs_);
    for (std::size_t k = 0; k < pairs_; ++k) labels[k] = k;
    for (const auto& [item, slot] : steps) {
      asg[item - 1] = labels[slot];
      tuple[2 * slot] += profits_[item - 1];
      tuple[2 * slot + 1] += times_[item - 1];
      if (canonicalize_) sift_right(tuple, slot, &labels);
    }
    return asg;
  }

  DpState materialize(std::size_t s) const {
    const Num* st = state(s);
    DpState out;
    out.reserve(pairs_);
    for (std::size_t k = 0; k < pairs_; ++k) {
      out.emplace_back(A::to_big(st[2 * k]), A::to_big(st[2 * k + 1]));
    }
    return out;
  }

  std::size_t birth(std::size_t s) const { return birth_[s]; }
  std::size_t parent(std::size_t s) const { return parent_[s]; }
  std::size_t choice(std::size_t s) const { return choice_[s]; }

  static Rational to_rational(const std::pair<Num, Num>& v) {
    return Rational(A::to_big(v.first), A::to_big(v.second));
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint64_t kIndexLimit = kEmpty - 1;

  const Num* state(std::size_t s) const { return data_.data() + s * stride_; }

  static std::pair<Num, Num> normalized(const Num& p, const Num& q) {
    if (q == 0) return {Num(0), Num(1)};
    return {p, q};
  }

  // Restores nondecreasing lexicographic (p, q) order after pair `k` grew.
  void sift_right(std::vector<Num>& t, std::size_t k,
                  std::vector<std::size_t>* labels = nullptr) const {
    while (k + 1 < pairs_) {
      const Num& p = t[2 * k];
      const Num& q = t[2 * k + 1];
      const Num& np = t[2 * k + 2];
      const Num& nq = t[2 * k + 3];
      if (p < np || (p == np && q <= nq)) break;
      std::swap(t[2 * k], t[2 * k + 2]);
      std::swap(t[2 * k + 1], t[2 * k + 3]);
      if (labels) std::swap((*labels)[k], (*labels)[k + 1]);
      ++k;
    }
  }

  std::uint64_t hash(const std::vector<Num>& t) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (const auto& x : t) h = mix(h ^ A::hash_word(x)) + 0x9E3779B97F4A7C15ULL;
    return h;
  }

  bool same(std::uint32_t s, const std::vector<Num>& t) const {
    return std::equal(t.begin(), t.end(), data_.begin() + s * stride_);
  }

  void insert(const std::vector<Num>& t, std::uint32_t parent, std::uint32_t choice,
              std::uint32_t birth) {
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(t) & mask;
    while (slots_[pos] != kEmpty) {
      if (same(slots_[pos], t)) return;
      pos = (pos + 1) & mask;
    }
    if (birth_.size() >= budget_) {
      throw Error(ErrorCode::MemoryBudgetExceeded,
                  "dynamic program exceeded its state budget of " + std::to_string(budget_) +
                      " distinct states");
    }
    const auto index = static_cast<std::uint32_t>(birth_.size());
    data_.insert(data_.end(), t.begin(), t.end());
    parent_.push_back(parent == kEmpty ? 0 : parent);
    choice_.push_back(choice);
    birth_.push_back(birth);
    slots_[pos] = index;
    if (2 * birth_.size() > slots_.size()) grow();
  }

  void grow() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, kEmpty);
    const std::size_t mask = fresh.size() - 1;
    std::vector<Num> t(stride_);
    for (std::uint32_t s = 0; s < birth_.size(); ++s) {
      std::copy_n(data_.begin() + s * stride_, stride_, t.begin());
      std::size_t pos = hash(t) & mask;
      while (fresh[pos] != kEmpty) pos = (pos + 1) & mask;
      fresh[pos] = s;
    }
    slots_ = std::move(fresh);
  }

  std::size_t n_;
  std::size_t pairs_;
  std::size_t stride_;
  bool canonicalize_;
  std::uint64_t budget_;
  std::vector<Num> profits_;
  std::vector<Num> times_;
  Num total_profit_{0};
  Num total_time_{0};

  std::vector<Num> data_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> choice_;
  std::vector<std::uint32_t> birth_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> layer_sizes_;
  std::vector<Num> scratch_;
};

bool fits_narrow(const Instance& inst, const Options& options) {
  if (options.arithmetic == Arithmetic::Wide) return false;
  const BigInt limit = BigInt(std::numeric_limits<std::uint64_t>::max());
  return inst.total_profit() <= limit && inst.total_time() <= limit;
}

template <class Fn>
auto with_engine(const Instance& inst, const Options& options, Fn&& fn) {
  if (fits_narrow(inst, options)) {
    Engine<std::uint64_t> engine(inst, options);
    return fn(engine, false);
  }
  Engine<BigInt> engine(inst, options);
  return fn(engine, true);
}

// Builds layers until the last one (index n-1) or until `stop` accepts a
// newly discovered state; returns that state's index if it did.
template <class Num, class Stop>
std::optional<std::size_t> run(Engine<Num>& engine, Stop&& stop) {
  if (stop(std::size_t{0})) return 0;
  for (std::size_t item = 1; item < engine.item_count(); ++item) {
    const std::size_t before = engine.state_count();
    engine.expand(item);
    for (std::size_t s = before; s < engine.state_count(); ++s) {
      if (stop(s)) return s;
    }
  }
  return std::nullopt;
}

template <class Num>
std::uint64_t states_explored(const Engine<Num>& engine) {
  std::uint64_t total = 0;
  for (std::size_t layer = 1; layer < engine.layers(); ++layer) total += engine.layer_size(layer);
  return total;
}

template <class Num>
void fill_counters(const Engine<Num>& engine, bool wide, DpReport& report) {
  report.states_explored = states_explored(engine);
  report.layers_built = engine.layers();
  report.distinct_states = engine.state_count();
  report.wide_arithmetic = wide;
}

}  // namespace

std::vector<DpLayer> build_layers(const Instance& inst, const Options& options, StopRule stop) {
  return with_engine(inst, options, [&](auto& engine, bool) {
    if (stop == StopRule::FpTarget) {
      run(engine, [&](std::size_t s) { return engine.certifies_fp(s); });
    } else {
      run(engine, [](std::size_t) { return false; });
    }

    std::vector<DpLayer> layers(engine.layers());
    for (std::size_t i = 0; i < layers.size(); ++i) {
      auto& layer = layers[i];
      layer.index = i;
      const std::size_t size = engine.layer_size(i);
      layer.states.reserve(size);
      for (std::size_t s = 0; s < size; ++s) layer.states.push_back(engine.materialize(s));
      if (i == 0) continue;
      layer.parents.reserve(size);
      for (std::size_t s = 0; s < size; ++s) {
        if (engine.birth(s) < i) {
          layer.parents.push_back({s, kStay});
        } else {
          layer.parents.push_back({engine.parent(s), engine.choice(s)});
        }
      }
    }
    return layers;
  });
}

DpReport dp_fp(const Instance& inst, const Options& options) {
  const auto start = std::chrono::steady_clock::now();
  DpReport report = with_engine(inst, options, [&](auto& engine, bool wide) {
    DpReport r;
    const auto found = run(engine, [&](std::size_t s) { return engine.certifies_fp(s); });
    r.decision = found.has_value();
    if (found) r.witness = engine.trace(*found);
    fill_counters(engine, wide, r);
    return r;
  });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

DpReport dp_map(const Instance& inst, const Options& options) {
  const auto start = std::chrono::steady_clock::now();
  DpReport report = with_engine(inst, options, [&](auto& engine, bool wide) {
    using E = std::remove_reference_t<decltype(engine)>;
    DpReport r;
    run(engine, [](std::size_t) { return false; });

    // The final layer contains every earlier one, so scanning it alone covers
    // all entries of all tables.
    std::size_t best_state = 0;
    auto best = engine.objective(0);
    for (std::size_t s = 1; s < engine.state_count(); ++s) {
      auto g = engine.objective(s);
      if (E::less(best, g)) {
        best = std::move(g);
        best_state = s;
      }
    }
    r.optimum = E::to_rational(best);
    r.witness = engine.trace(best_state);
    fill_counters(engine, wide, r);
    return r;
  });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace mapfp::dp
