// Serial reference vs OpenMP paths of the grid and section kernels.
// Arg 0 selects Exec::Serial, 1 selects Exec::Parallel.

#include <benchmark/benchmark.h>

#include "leech/solver.hpp"
#include "leech/toeplitz.hpp"
#include "support/instances.hpp"

namespace leech {
namespace {

Exec ExecFor(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

const testing::SolvableInstance& Instance() {
  static const testing::SolvableInstance inst = [] {
    testing::Rng rng(99);
    return testing::random_solvable(rng, 3, 3, 3, 5, 2);
  }();
  return inst;
}

void BM_HinfNormGrid(benchmark::State& state) {
  const Realization X = Instance().X0;
  const Exec exec = ExecFor(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hinf_norm_grid(X, 4096, exec));
  }
}
BENCHMARK(BM_HinfNormGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LeechResidual(benchmark::State& state) {
  const auto& inst = Instance();
  const Exec exec = ExecFor(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(leech_residual(inst.data, inst.X0, 4096, exec));
  }
}
BENCHMARK(BM_LeechResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SymbolSection(benchmark::State& state) {
  const SymbolR sym = build_symbol(Instance().data);
  const Exec exec = ExecFor(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(toeplitz_section(sym, 120, exec));
  }
}
BENCHMARK(BM_SymbolSection)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PickKernel(benchmark::State& state) {
  const auto& inst = Instance();
  testing::Rng rng(7);
  std::vector<Complex> points;
  for (int k = 0; k < 64; ++k) points.push_back(testing::random_disc_point(rng));
  const Exec exec = ExecFor(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pick_kernel_matrix(inst.data, points, nullptr, exec));
  }
}
BENCHMARK(BM_PickKernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  SolveOptions opts;
  opts.exec = ExecFor(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(Instance().data, opts));
  }
}
BENCHMARK(BM_Solve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace leech

BENCHMARK_MAIN();
