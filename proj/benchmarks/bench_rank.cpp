#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "evanescent/covariance.hpp"
#include "evanescent/rank.hpp"

using namespace evanescent;

namespace {

std::vector<EvanescentComponent> figure_five() {
  return {EvanescentComponent(SlopePair::make(3, 2), 0.7, ProcessSpec::ar1(1.0, 0.5, 1)),
          EvanescentComponent(SlopePair::make(2, 1), 1.9, ProcessSpec::ar1(1.0, 0.5, 1)),
          EvanescentComponent(SlopePair::make(1, 3), 3.1, ProcessSpec::ar1(1.0, 0.5, 1))};
}

}  // namespace

static void BM_AssembleGamma(benchmark::State& state) {
  const LatticeRect rect(state.range(0), state.range(0));
  const auto comps = figure_five();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_gamma(comps, rect).gamma().data());
}
BENCHMARK(BM_AssembleGamma)->Arg(8)->Arg(15)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_NumericalRank(benchmark::State& state) {
  const LatticeRect rect(state.range(0), state.range(0));
  const auto gamma = assemble_gamma(figure_five(), rect).gamma();
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(gamma).rank);
}
BENCHMARK(BM_NumericalRank)->Arg(8)->Arg(15)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_NumericalRankGeneral(benchmark::State& state) {
  const LatticeRect rect(state.range(0), state.range(0));
  const auto c = assemble_gamma(figure_five(), rect).stacked_coefficients();
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank_general(c).rank);
}
BENCHMARK(BM_NumericalRankGeneral)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_PredictRank(benchmark::State& state) {
  const LatticeRect rect(15, 15);
  const auto comps = figure_five();
  for (auto _ : state) benchmark::DoNotOptimize(predict_rank(comps, rect).formula_value);
}
BENCHMARK(BM_PredictRank);

static void BM_CertificateAudit(benchmark::State& state) {
  const LatticeRect rect(15, 15);
  const auto comps = figure_five();
  const auto model = assemble_gamma(comps, rect);
  const auto points = dependent_point_set(comps, rect);
  for (auto _ : state) {
    double worst = 0.0;
    for (const auto& p : points) worst = std::max(worst, verify_certificate(*find_certificate(p, comps, rect), model));
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_CertificateAudit)->Unit(benchmark::kMillisecond);

static void BM_SynthesizeSum(benchmark::State& state) {
  const LatticeRect rect(state.range(0), state.range(0));
  const auto comps = figure_five();
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_sum(comps, rect, draw++).values().data());
}
BENCHMARK(BM_SynthesizeSum)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
