#include <benchmark/benchmark.h>

#include "coint_rec/experiments.hpp"
#include "coint_rec/lasso.hpp"
#include "coint_rec/rec.hpp"
#include "coint_rec/spectral.hpp"
#include "coint_rec/theory.hpp"

namespace ex = coint_rec::experiments;

namespace {

ex::ExperimentConfig point(std::size_t T, std::size_t N, std::size_t s) {
  ex::ExperimentConfig c;
  c.grid = {{T, N, s}};
  c.replications = 1;
  c.chernoff_stats = false;
  return c;
}

void BM_WalkEigenvalues(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coint_rec::spectral::walk_eigenvalues(T));
}
BENCHMARK(BM_WalkEigenvalues)->Arg(256)->Arg(4096);

void BM_Simulate(benchmark::State& state) {
  const auto c = point(static_cast<std::size_t>(state.range(0)), 50, 3);
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ex::point_sample(c, 0, rep++));
}
BENCHMARK(BM_Simulate)->Arg(200)->Arg(1600);

void BM_SparseEigenvalues(benchmark::State& state) {
  const auto c = point(200, static_cast<std::size_t>(state.range(0)), 3);
  const auto sample = ex::point_sample(c, 0, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(coint_rec::rec::sparse_eigenvalues(sample.X, 0.05, 3));
}
BENCHMARK(BM_SparseEigenvalues)->Arg(20)->Arg(50);

void BM_RecSampled(benchmark::State& state) {
  const auto c = point(200, 50, 3);
  const auto sample = ex::point_sample(c, 0, 0);
  const double f = coint_rec::theory::scaling_factor(3, 50, 200);
  coint_rec::rec::SampledOptions opt;
  opt.restarts = 4;
  opt.iters = 100;
  opt.support_samples = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(coint_rec::rec::rec_sampled({sample.X, f, 3, 3.0}, opt));
}
BENCHMARK(BM_RecSampled)->Unit(benchmark::kMillisecond);

void BM_LassoFit(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const auto c = point(T, 50, 3);
  const auto sample = ex::point_sample(c, 0, 0);
  const double lambda = c.lambda_rule.lambda(T, 50);
  for (auto _ : state)
    benchmark::DoNotOptimize(coint_rec::lasso::fit({sample.y, sample.X, lambda, 1.0}));
}
BENCHMARK(BM_LassoFit)->Arg(200)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_LassoReplication(benchmark::State& state) {
  auto c = point(200, 50, 3);
  c.replications = 8;
  for (auto _ : state) benchmark::DoNotOptimize(ex::run_lasso_experiment(c, 1));
}
BENCHMARK(BM_LassoReplication)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
