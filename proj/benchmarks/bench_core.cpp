#include <random>

#include <Eigen/Dense>
#include <benchmark/benchmark.h>

#include "specgap/bound_core.hpp"
#include "specgap/constants.hpp"
#include "specgap/jacobi.hpp"
#include "specgap/operator_lab.hpp"
#include "specgap/partition_optimizer.hpp"

namespace {

using namespace specgap;

void BM_GapIntegral(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(gap_integral(0.0, b));
}
BENCHMARK(BM_GapIntegral)->Arg(300)->Arg(675)->Arg(860);

void BM_TableInverse(benchmark::State& state) {
  const GapIntegralTable table;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> target(0.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(table.inverse(target(rng)));
}
BENCHMARK(BM_TableInverse);

void BM_InverseMsBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(inverse_ms_bound(kDefaultBudget));
}
BENCHMARK(BM_InverseMsBound);

void BM_JacobiEigen(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::srand(7);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n);
  const Eigen::MatrixXd a = m + m.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigen)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_MeasureInstance(benchmark::State& state) {
  const int half = static_cast<int>(state.range(0)) / 2;
  const OperatorInstance inst = generate(3, half, half, 0.5, SpectralLayout::subordinated);
  for (auto _ : state) benchmark::DoNotOptimize(measure(inst));
}
BENCHMARK(BM_MeasureInstance)->Arg(8)->Arg(32);

void BM_MaximizeReach(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_reach(steps).certificate.reach);
}
BENCHMARK(BM_MaximizeReach)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NOffStar(benchmark::State& state) {
  const PiecewiseBound pw = make_piecewise_bound(gap_constants());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(0.0, 0.69);
  for (auto _ : state) benchmark::DoNotOptimize(n_off_star(t(rng), pw));
}
BENCHMARK(BM_NOffStar);

} // namespace

BENCHMARK_MAIN();
