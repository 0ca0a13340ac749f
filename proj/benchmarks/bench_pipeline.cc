#include <benchmark/benchmark.h>

#include "robustpred/bayes.h"
#include "robustpred/decision_tree.h"
#include "robustpred/evaluation.h"
#include "robustpred/noise_filter.h"
#include "robustpred/synth.h"

namespace {

using namespace robustpred;

Dataset student_data(std::size_t n) {
  return synth::generate(synth::bundled_persona("student"), n, 0.05, 7).dataset;
}

void BM_BayesFit(benchmark::State& state) {
  const auto data = student_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes::BayesModel::fit(data));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BayesFit)->Arg(500)->Arg(2000)->Arg(8000);

void BM_DetectNoise(benchmark::State& state) {
  const auto data = student_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise::detect_noise(data));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectNoise)->Arg(500)->Arg(2000)->Arg(8000);

void BM_BuildTree(benchmark::State& state) {
  const auto data = student_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree::build_tree(data));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTree)->Arg(500)->Arg(2000)->Arg(8000);

void BM_Compare10Fold(benchmark::State& state) {
  const auto data = student_data(static_cast<std::size_t>(state.range(0)));
  eval::PipelineParams params;
  params.parallel = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::compare(data, params, 11));
  }
}
BENCHMARK(BM_Compare10Fold)
    ->Args({2000, 0})
    ->Args({2000, 1})
    ->Args({8000, 0})
    ->Args({8000, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
