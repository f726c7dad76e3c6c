#include <benchmark/benchmark.h>

#include "heterogen/features.hpp"
#include "heterogen/graphon.hpp"
#include "heterogen/heterophily.hpp"

using namespace heterogen;

namespace {

void BM_SampleGraphER(benchmark::State& state) {
  const Graphon g = Graphon::constant(0.5);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    GraphSample s = sample_graph(g, n, seed++);
    benchmark::DoNotOptimize(s.neighbors.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleGraphER)->Arg(256)->Arg(512)->Arg(1024)->Complexity();

void BM_SampleGraphSBM(benchmark::State& state) {
  const Graphon g =
      Graphon::step_function({0.5, 0.5}, {{0.8, 0.2}, {0.2, 0.8}});
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    GraphSample s = sample_graph(g, n, seed++);
    benchmark::DoNotOptimize(s.neighbors.data());
  }
}
BENCHMARK(BM_SampleGraphSBM)->Arg(512)->Arg(1024);

void BM_ApplyFilter(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const GraphSample s = sample_graph(Graphon::constant(0.5), n, 7);
  const FeatureMatrix x0 = sample_white_features(n, n, 8);
  const PolyFilter f = PolyFilter::make({1.0, -0.5, 0.25});
  for (auto _ : state) {
    FeatureMatrix x = apply_filter(f, s, x0);
    benchmark::DoNotOptimize(x.values.data());
  }
}
BENCHMARK(BM_ApplyFilter)->Arg(256)->Arg(512)->Arg(1024);

void BM_EmpiricalHeterophily(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const GraphSample s = sample_graph(Graphon::constant(0.5), n, 7);
  const FeatureMatrix x = sample_white_features(n, n, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_heterophily(s, x));
  }
}
BENCHMARK(BM_EmpiricalHeterophily)->Arg(256)->Arg(512)->Arg(1024);

void BM_MuTraceExact(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const GraphSample s = sample_graph(Graphon::constant(0.5), n, 7);
  const PolyFilter f = PolyFilter::make({1.0, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_heterophily_trace(s, f));
  }
}
BENCHMARK(BM_MuTraceExact)->Arg(256)->Arg(512)->Arg(1024);

void BM_MuEigen(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const GraphSample s = sample_graph(Graphon::constant(0.5), n, 7);
  const PolyFilter f = PolyFilter::make({1.0, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_heterophily_eigen(s, f));
  }
}
BENCHMARK(BM_MuEigen)->Arg(256)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
