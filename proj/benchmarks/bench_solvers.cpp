#include "hostmarket/equilibrium.hpp"
#include "hostmarket/welfare.hpp"

#include <benchmark/benchmark.h>

using namespace hostmarket;

namespace {

const MarketParams kS0{10, 5, 10.0, 0.2};
const DemandCurve kLinear = LinearDemand{2.0, 0.04};
const DemandCurve kElastic = ConstantElasticityDemand{1500.0, -1.6};
const SupplyPropensity kRamp = LinearSupply{0.0, 1.25};

void BM_FreeListing(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_free_listing(kS0, kLinear, kRamp));
}
BENCHMARK(BM_FreeListing);

void BM_SortingLinear(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_sorting_equilibrium(kS0, kLinear));
}
BENCHMARK(BM_SortingLinear);

void BM_SortingElastic(benchmark::State& state) {
  const MarketParams m{200, 20, 10.0, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(solve_sorting_equilibrium(m, kElastic));
}
BENCHMARK(BM_SortingElastic);

void BM_Planner(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_planner_optimum(kS0, kLinear));
}
BENCHMARK(BM_Planner);

void BM_CompareRegimes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compare_regimes(kS0, kLinear, kRamp));
}
BENCHMARK(BM_CompareRegimes);

}  // namespace

BENCHMARK_MAIN();
