#include <benchmark/benchmark.h>

#include <cmath>

#include "blockpart/balancer.hpp"
#include "blockpart/bench.hpp"
#include "blockpart/functionals.hpp"
#include "blockpart/oracle.hpp"
#include "blockpart/pl_solver.hpp"
#include "blockpart/preprocess.hpp"
#include "blockpart/streaming.hpp"

namespace {

using namespace blockpart;

void BM_BalanceFromFirstBlock(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto seq = Sequence::scalars(uniform_sequence(trial_seed(1, n, k, 0), n));
  const auto s = sum_functional(seq);
  BalanceOptions o;
  o.init = CutVector::all_in_first(n, k);
  std::size_t iterations = 0;
  for (auto _ : state) {
    const auto r = balance(s, k, o);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.spread);
  }
  state.counters["moves"] = static_cast<double>(iterations);
}
BENCHMARK(BM_BalanceFromFirstBlock)->ArgsProduct({{8, 16, 32, 64, 128}, {2, 4, 8}});

void BM_BalanceDefaultStart(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = Sequence::scalars(uniform_sequence(7, n));
  for (auto _ : state) benchmark::DoNotOptimize(balance(seq, 16).spread);
}
BENCHMARK(BM_BalanceDefaultStart)->RangeMultiplier(4)->Range(64, 1 << 16);

void BM_QuickPartition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = Sequence::scalars(uniform_sequence(11, n));
  for (auto _ : state) benchmark::DoNotOptimize(quick_partition(seq, 16).spread);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QuickPartition)->RangeMultiplier(4)->Range(64, 1 << 16);

void BM_GroupBlocks(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto v = uniform_sequence(13, n);
  for (std::size_t i = 0; i < n; i += 3) v[i] = -0.9 * v[i];
  const auto seq = Sequence::scalars(std::move(v), BoundKind::upper_bounded);
  for (auto _ : state) benchmark::DoNotOptimize(group_blocks(seq).merges);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GroupBlocks)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_StreamPartition(benchmark::State& state) {
  const auto v = uniform_sequence(17, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stream_partition(v, 2.7).blocks.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamPartition)->Arg(10000)->Arg(100000);

void BM_Spread2AbsSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  auto v = uniform_sequence(19, n);
  for (double& x : v) x = 2.0 * x - 1.0;
  const auto s = abs_sum_functional(Sequence::scalars(std::move(v), BoundKind::symmetric));
  for (auto _ : state) benchmark::DoNotOptimize(balance_spread2(s, k).spread);
}
BENCHMARK(BM_Spread2AbsSum)->ArgsProduct({{8, 12, 24}, {2, 3, 4}})->Unit(benchmark::kMicrosecond);

void BM_OracleMinSpread(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = sum_functional(Sequence::scalars(uniform_sequence(23, n)));
  for (auto _ : state) benchmark::DoNotOptimize(min_spread(s, 4).min_spread);
  state.counters["partitions"] = static_cast<double>(cut_vector_count(n, 4));
}
BENCHMARK(BM_OracleMinSpread)->DenseRange(8, 32, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
