#include <benchmark/benchmark.h>

#include <map>

#include "causal/analysis.hpp"
#include "causal/counter.hpp"
#include "causal/oracle.hpp"

namespace {

using namespace causal;

// Datasets are generated once per parameter set and shared across runs.
const TemporalLinkSequence& dataset(const SynthParameters& p) {
  static std::map<std::tuple<std::size_t, std::size_t, Timestamp, double>, TemporalLinkSequence> cache;
  auto key = std::tuple{p.n_nodes, p.n_links, p.time_horizon, p.edge_density};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, synth_generate(p)).first;
  return it->second;
}

const SynthParameters kSparse{100, 200'000, 20'000, 0.1, 1};
const SynthParameters kDense{20, 20'000, 2'000, 0.5, 1};

void run_streaming(benchmark::State& state, std::span<const TimeStampedLink> links,
                   const CountParameters& params) {
  std::size_t distinct = 0;
  for (auto _ : state) {
    auto result = count_causal_paths(links, params);
    distinct = result.size();
    benchmark::DoNotOptimize(result);
  }
  state.counters["distinct_paths"] = double(distinct);
  state.SetItemsProcessed(state.iterations() * std::int64_t(links.size()));
}

void BM_StreamingN(benchmark::State& state) {
  const auto& data = dataset(kSparse);
  run_streaming(state, std::span(data.links).first(std::size_t(state.range(0))),
                CountParameters(Delta::finite(8), 4));
}
BENCHMARK(BM_StreamingN)->RangeMultiplier(2)->Range(25'000, 200'000)->Unit(benchmark::kMillisecond);

void BM_StreamingDelta(benchmark::State& state) {
  const auto& data = dataset(kSparse);
  run_streaming(state, data.links, CountParameters(Delta::finite(state.range(0)), 3));
}
BENCHMARK(BM_StreamingDelta)->DenseRange(2, 16, 2)->Unit(benchmark::kMillisecond);

void BM_StreamingK(benchmark::State& state) {
  const auto& data = dataset(kDense);
  run_streaming(state, data.links, CountParameters(Delta::finite(3), std::size_t(state.range(0))));
}
BENCHMARK(BM_StreamingK)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_BaselineDelta(benchmark::State& state) {
  const auto& data = dataset(kSparse);
  const auto links = std::span(data.links).first(20'000);
  const CountParameters params(Delta::finite(state.range(0)), 3);
  BaselineOptions options;
  options.cap = ~0ULL;
  for (auto _ : state) benchmark::DoNotOptimize(baseline_count(links, params, options));
}
BENCHMARK(BM_BaselineDelta)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_LambdaMax(benchmark::State& state) {
  const auto graph = aggregate(dataset(kSparse));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_max(graph));
}
BENCHMARK(BM_LambdaMax);

}  // namespace

BENCHMARK_MAIN();
