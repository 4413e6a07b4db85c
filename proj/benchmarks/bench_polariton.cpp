#include "polariton/cavity.hpp"
#include "polariton/hopfield.hpp"
#include "polariton/oracles.hpp"
#include "polariton/quench.hpp"

#include <benchmark/benchmark.h>

using namespace polariton;

static void BM_BranchFrequencies(benchmark::State& state)
{
  double k = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(branch_frequencies({}, {k}, 1.0, 0.05));
    k = k > 3.0 ? 0.1 : k + 1e-3;
  }
}
BENCHMARK(BM_BranchFrequencies);

static void BM_NormalModeBasis(benchmark::State& state)
{
  for (auto _ : state)
    benchmark::DoNotOptimize(normal_mode_basis({}, {1.3}, 1.0, 0.05));
}
BENCHMARK(BM_NormalModeBasis);

// Ramp at one k; argument is 100 * T.
static void BM_BogoliubovRamp(benchmark::State& state)
{
  const double T = static_cast<double>(state.range(0)) / 100.0;
  const QuenchSpec spec{Schedule::smooth_ramp(1.0, 0.95, T), Schedule::smooth_ramp(0.05, 0.03, T), {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(bogoliubov(spec, {1.5}));
}
BENCHMARK(BM_BogoliubovRamp)->Arg(10)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

// Duration sweep point: k = 20, argument is T.
static void BM_BogoliubovSweep(benchmark::State& state)
{
  const auto T = static_cast<double>(state.range(0));
  const QuenchSpec spec{Schedule::smooth_ramp(1.0, 0.9, T), Schedule::constant(0.001), {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(bogoliubov(spec, {20.0}));
}
BENCHMARK(BM_BogoliubovSweep)->Arg(1)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_ExactSigmoid(benchmark::State& state)
{
  double tau = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_sigmoid_number({1.0, 0.9, tau}));
    tau = tau > 5.0 ? 0.01 : tau * 1.001;
  }
}
BENCHMARK(BM_ExactSigmoid);

// Cavity build + diagonalization; argument is the number of continuum points.
static void BM_CavityDiagonalize(benchmark::State& state)
{
  const CavityGeometry g{16.0, 2.0, 64};
  const ContinuumSpec c =
    ContinuumSpec::flat(g.box_mode_frequency(1, {}), 0.15, static_cast<std::size_t>(state.range(0)), 1.0, 0.13);
  for (auto _ : state)
    benchmark::DoNotOptimize(diagonalize(build_hamiltonian(g, c, {})));
}
BENCHMARK(BM_CavityDiagonalize)->Arg(4)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
