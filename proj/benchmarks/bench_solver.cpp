#include <numbers>

#include <benchmark/benchmark.h>

#include "bridge/chebyshev.hpp"
#include "bridge/profile.hpp"
#include "bridge/spectral_bvp.hpp"
#include "bridge/variation.hpp"

namespace {

void BM_DiffOperator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto d = bridge::diff_operator(n - 1, n, 1, bridge::Interval{-1.0, 1.0});
    benchmark::DoNotOptimize(d.entries.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiffOperator)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_Frechet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bridge::BvpProblem p{1.0, 16.0, 0.0, 1.0};
  const bridge::ChebGrid grid(n, bridge::Interval{-1.0, 1.0});
  const auto s = bridge::initial_guess(1.0, 16.0, grid);
  const bridge::Collocation ops(n);
  for (auto _ : state) {
    auto L = bridge::frechet(s, p, ops);
    benchmark::DoNotOptimize(L.data());
  }
}
BENCHMARK(BM_Frechet)->Arg(60)->Arg(135)->Arg(303);

// Newton at one outer radius, starting from the cold guess.
void BM_NewtonUnitSigma(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bridge::BvpProblem p{1.0, 16.0, 0.0, 1.0};
  const bridge::ChebGrid grid(n, bridge::Interval{-1.0, 1.0});
  const auto guess = bridge::initial_guess(1.0, 16.0, grid);
  bridge::SolverConfig cfg;
  for (auto _ : state) {
    auto [s, rep] = bridge::newton_solve(guess, p, cfg);
    benchmark::DoNotOptimize(s.U.data());
  }
}
BENCHMARK(BM_NewtonUnitSigma)->Arg(60)->Arg(135)->Unit(benchmark::kMillisecond);

void BM_SolveT(benchmark::State& state) {
  bridge::SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(bridge::solve_T(1.0, cfg).T);
}
BENCHMARK(BM_SolveT)->Unit(benchmark::kMillisecond);

void BM_Variation(benchmark::State& state) {
  bridge::SolverConfig cfg;
  const auto sol = bridge::solve_T(1.0, cfg);
  // Tprime near sigma = 1 from a sweep; the cost does not depend on it much.
  const double tprime = 0.289;
  for (auto _ : state) {
    auto t = bridge::integrate_variation(1.0, sol.T, tprime, cfg);
    benchmark::DoNotOptimize(t.min_rdot);
  }
}
BENCHMARK(BM_Variation)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
