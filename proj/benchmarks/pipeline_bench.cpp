#include <benchmark/benchmark.h>

#include "erisk/fahp.hpp"
#include "erisk/fuzzy.hpp"
#include "erisk/scenario.hpp"
#include "erisk/sensitivity.hpp"

namespace {

using namespace erisk;

const scenario::Scenario& case_study() {
  static const scenario::Scenario s = scenario::builtin("patient-dilemma");
  return s;
}

void BM_Centroid(benchmark::State& state) {
  const auto& out = case_study().output;
  fuzzy::ActivationVector act({{"Low", 0}, {"Med", 0.15}, {"High", 0.75}});
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fuzzy::defuzzify_centroid(act, out, resolution));
}
BENCHMARK(BM_Centroid)->Arg(101)->Arg(1001)->Arg(10001);

void BM_Infer(benchmark::State& state) {
  const auto& s = case_study();
  const auto& risk = s.risk("PH");
  const auto& inputs = s.inputs.at("PH");
  for (auto _ : state) benchmark::DoNotOptimize(fuzzy::infer(risk.rule_base, inputs).erm);
}
BENCHMARK(BM_Infer);

void BM_Assess(benchmark::State& state) {
  const auto& s = case_study();
  for (auto _ : state) benchmark::DoNotOptimize(scenario::assess(s, s.inputs).ranking.size());
}
BENCHMARK(BM_Assess);

void BM_DeriveWeights(benchmark::State& state) {
  const auto m = *scenario::compute_weights(case_study()).aggregated;
  for (auto _ : state) benchmark::DoNotOptimize(fahp::derive_weights(m).crisp_weights[0]);
}
BENCHMARK(BM_DeriveWeights);

void BM_ConsistencyEigen(benchmark::State& state) {
  const auto m = scenario::compute_weights(case_study()).aggregated->midpoints();
  for (auto _ : state) benchmark::DoNotOptimize(fahp::consistency_eigen(m).cr);
}
BENCHMARK(BM_ConsistencyEigen);

void BM_MonteCarlo(benchmark::State& state) {
  const auto m = scenario::compute_weights(case_study()).aggregated->midpoints();
  sensitivity::MonteCarloOptions o;
  o.n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = sensitivity::fahp_monte_carlo(m, {"PH", "AV", "TL"}, {0.632, 0.648, 0.525}, {78, 25, 65}, o);
    benchmark::DoNotOptimize(r.mean_weights[0]);
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_SobolRisk(benchmark::State& state) {
  sensitivity::RiskSobolOptions o;
  o.sobol.n_base = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity::sobol_risk(case_study(), "PH", o).variance);
}
BENCHMARK(BM_SobolRisk)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Tornado(benchmark::State& state) {
  const auto& s = case_study();
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity::tornado(s, s.inputs, "PH").baseline_ers);
}
BENCHMARK(BM_Tornado)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
