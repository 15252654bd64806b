#include <benchmark/benchmark.h>

#include "rcec/rcec.hpp"

namespace {

using namespace rcec;

Matrix clr_sample(std::size_t n, std::size_t p) {
  const auto y = sample_case(SimulationCase::gaussian(), build_omega0(p), n, std::uint64_t{1});
  return clr_transform(basis_to_composition(y)).values();
}

void BM_MomCovariance(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Matrix w = clr_sample(100, p);
  const std::size_t m = default_block_count(p, 1.0, 100);
  for (auto _ : state) benchmark::DoNotOptimize(mom_covariance(w, m));
}
BENCHMARK(BM_MomCovariance)->Arg(50)->Arg(100)->Arg(200);

void BM_SampleCovariance(benchmark::State& state) {
  const Matrix w = clr_sample(100, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_covariance(w));
}
BENCHMARK(BM_SampleCovariance)->Arg(50)->Arg(100)->Arg(200);

void BM_JacobiEigenvalues(benchmark::State& state) {
  const auto omega = build_omega0(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(omega, false));
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(50)->Arg(100)->Arg(200);

void BM_ThresholdMatrix(benchmark::State& state) {
  const Matrix w = clr_sample(100, static_cast<std::size_t>(state.range(0)));
  const auto gamma = mom_covariance(w, 12);
  const auto rule = ThresholdRule::scad(3.7);
  for (auto _ : state) benchmark::DoNotOptimize(threshold_matrix(gamma, 1.0, 100, rule));
}
BENCHMARK(BM_ThresholdMatrix)->Arg(50)->Arg(100)->Arg(200);

void BM_Estimate(benchmark::State& state) {
  const Matrix w = clr_sample(100, static_cast<std::size_t>(state.range(0)));
  EstimatorConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_from_logs(w, config));
}
BENCHMARK(BM_Estimate)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
