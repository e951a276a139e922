#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mapfp/instance.hpp"

namespace mapfp::dp {

inline constexpr std::uint64_t kDefaultStateBudget = 50'000'000;

enum class Arithmetic {
  // 64-bit coordinates with 128-bit cross products whenever S and T fit in
  // 64 bits, arbitrary precision otherwise.
  Automatic,
  // Always arbitrary precision.
  Wide,
};

struct Options {
  // Keep the m-1 tracked pairs sorted so that relabelings of the same
  // partial partition collapse into one state.
  bool canonicalize = true;
  // Cap on the number of distinct reachable states held in memory.
  std::uint64_t state_budget = kDefaultStateBudget;
  Arithmetic arithmetic = Arithmetic::Automatic;
};

// Running sums (p_k, q_k) of the tracked groups 1..m-1. Group m is never
// tracked: it always receives item n and everything not placed elsewhere.
using DpState = std::vector<RatioForm>;

inline constexpr std::size_t kStay = 0;

struct ParentEdge {
  // Index of the predecessor in the previous layer's `states`.
  std::size_t predecessor = 0;
  // kStay, or k in 1..m-1 when item `index` was added to tracked pair k of
  // the predecessor.
  std::size_t placement = kStay;
};

// Layer i holds every state reachable after items 1..i have been processed,
// i.e. the support of the dense reachability table t(i, .).
struct DpLayer {
  std::size_t index = 0;
  std::vector<DpState> states;
  // One edge per state; empty for layer 0, whose only state is the root.
  std::vector<ParentEdge> parents;
};

enum class StopRule {
  None,
  // Halt at the first layer containing a state that certifies FP.
  FpTarget,
};

// Materializes layers 0..n-1 (fewer when the stop rule fires). States are
// listed in discovery order; a state keeps its position in every later layer.
// Throws Error{MemoryBudgetExceeded}.
std::vector<DpLayer> build_layers(const Instance& inst, const Options& options = {},
                                  StopRule stop = StopRule::None);

struct DpReport {
  std::optional<bool> decision;     // set by dp_fp
  std::optional<Rational> optimum;  // set by dp_map
  // Witness partition; empty when dp_fp decides false.
  Assignment witness;
  // Sum of layer sizes over layers 1..last built.
  std::uint64_t states_explored = 0;
  // Number of layers built, counting layer 0.
  std::size_t layers_built = 0;
  std::uint64_t distinct_states = 0;
  bool wide_arithmetic = false;
  std::chrono::nanoseconds elapsed{0};
};

DpReport dp_fp(const Instance& inst, const Options& options = {});
DpReport dp_map(const Instance& inst, const Options& options = {});

}  // namespace mapfp::dp
