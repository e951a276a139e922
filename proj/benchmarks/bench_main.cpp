#include <benchmark/benchmark.h>

#include "mapfp/dp.hpp"
#include "mapfp/oracle.hpp"
#include "mapfp/random.hpp"
#include "mapfp/reductions.hpp"

namespace {

using namespace mapfp;

Instance seeded(std::size_t n, std::size_t m, std::uint64_t max_value) {
  SplitMix64 rng(n * 1000 + m);
  return random_instance(n, m, max_value, rng);
}

void BM_DpMapTwoGroups(benchmark::State& state) {
  const Instance inst = seeded(static_cast<std::size_t>(state.range(0)), 2, 50);
  std::size_t states = 0;
  for (auto _ : state) {
    const auto r = dp::dp_map(inst);
    states = r.states_explored;
    benchmark::DoNotOptimize(r.optimum);
  }
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_DpMapTwoGroups)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

void BM_DpMapThreeGroups(benchmark::State& state) {
  const Instance inst = seeded(static_cast<std::size_t>(state.range(0)), 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(dp::dp_map(inst).optimum);
}
BENCHMARK(BM_DpMapThreeGroups)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_DpFp(benchmark::State& state) {
  const Instance inst = seeded(static_cast<std::size_t>(state.range(0)), 2, 20);
  for (auto _ : state) benchmark::DoNotOptimize(dp::dp_fp(inst).decision);
}
BENCHMARK(BM_DpFp)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_DpMapCanonicalization(benchmark::State& state) {
  const Instance inst = seeded(12, 4, 5);
  dp::Options opts;
  opts.canonicalize = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(dp::dp_map(inst, opts).optimum);
}
BENCHMARK(BM_DpMapCanonicalization)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const Instance inst = seeded(static_cast<std::size_t>(state.range(0)), 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve(inst).optimum);
}
BENCHMARK(BM_BruteForce)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_GenerateQ4(benchmark::State& state) {
  const auto m = state.range(0);
  std::vector<BigInt> d(static_cast<std::size_t>(3 * m), BigInt(3));
  const auto src = reductions::make_three_partition_instance(d, m);
  for (auto _ : state) benchmark::DoNotOptimize(reductions::generate_q4(src).params.L);
}
BENCHMARK(BM_GenerateQ4)->RangeMultiplier(4)->Range(2, 32);

}  // namespace
BENCHMARK_MAIN();
