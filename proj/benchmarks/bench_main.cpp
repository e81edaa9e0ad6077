#include <benchmark/benchmark.h>

#include <numbers>

#include "ttp/averaging.hpp"
#include "ttp/classical_limit.hpp"
#include "ttp/closed_form.hpp"
#include "ttp/spin_models.hpp"
#include "ttp/sweeps.hpp"

namespace {

const ttp::HeisenbergParams kParams{0.8, -0.4, 0.3, 0.6, -0.2};

void BM_ThermalState(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ttp::thermal_state(kParams, 0.7));
}
BENCHMARK(BM_ThermalState);

void BM_ThermalStateDense(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ttp::thermal_state_dense(kParams, 0.7));
}
BENCHMARK(BM_ThermalStateDense);

void BM_AverageAll(benchmark::State& state) {
  const auto rho = ttp::thermal_state(kParams, 0.7).rho;
  const auto grid = ttp::QuadratureGrid::make(static_cast<int>(state.range(0)),
                                              static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ttp::average_all(rho, 0.4, grid));
}
BENCHMARK(BM_AverageAll)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_AngularAveragesAt(benchmark::State& state) {
  const ttp::AngularAverages ang(ttp::thermal_state(kParams, 0.7).rho);
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ang.at(phi));
    phi += 1e-3;
  }
}
BENCHMARK(BM_AngularAveragesAt);

void BM_OracleProbOptimal(benchmark::State& state) {
  const ttp::AngularAverages ang(ttp::thermal_state(kParams, 0.7).rho);
  for (auto _ : state) benchmark::DoNotOptimize(ttp::oracle_prob_optimal(ang));
}
BENCHMARK(BM_OracleProbOptimal)->Unit(benchmark::kMicrosecond);

void BM_ClosedDetOptimal(benchmark::State& state) {
  const auto in = ttp::ClosedFormInputs::from(kParams, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(ttp::f_det_optimal(in));
}
BENCHMARK(BM_ClosedDetOptimal);

void BM_ClosedProbOptimal(benchmark::State& state) {
  const auto in = ttp::ClosedFormInputs::from(kParams, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(ttp::prob_optimal(in));
}
BENCHMARK(BM_ClosedProbOptimal)->Unit(benchmark::kMicrosecond);

void BM_EvaluatePoint(benchmark::State& state) {
  ttp::ModelSpec m;
  m.kind = ttp::ModelKind::XXX;
  m.bigj = 2.0;
  m.field = 8.0;
  const auto engine = static_cast<ttp::Engine>(state.range(0));
  ttp::process_reconciliation();
  for (auto _ : state) benchmark::DoNotOptimize(ttp::evaluate_point(m, 0.5, engine));
}
BENCHMARK(BM_EvaluatePoint)
    ->Arg(static_cast<int>(ttp::Engine::Oracle))
    ->Arg(static_cast<int>(ttp::Engine::Closed))
    ->Unit(benchmark::kMillisecond);

void BM_OracleOptimalDetSeparable(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto ch = ttp::random_separable_channel(rng).assemble();
  for (auto _ : state) benchmark::DoNotOptimize(ttp::oracle_optimal_det_fidelity(ch));
}
BENCHMARK(BM_OracleOptimalDetSeparable)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
