#include "hostmarket/abm.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

using namespace hostmarket;

namespace {

const DemandCurve kLinear = LinearDemand{2.0, 0.04};
const SupplyPropensity kRamp = LinearSupply{0.0, 1.25};

void BM_RunToConvergence(benchmark::State& state) {
  const MarketParams m{static_cast<int>(state.range(0)), 5, 10.0, 0.2 * 10 / static_cast<double>(state.range(0))};
  ABMConfig config;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(run_to_convergence(init_state(m, kLinear, kRamp, config), m, kLinear, config));
  }
}
BENCHMARK(BM_RunToConvergence)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Batch(benchmark::State& state) {
  const MarketParams m{10, 5, 10.0, 0.2};
  std::vector<std::uint64_t> seeds(100);
  std::iota(seeds.begin(), seeds.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_batch(m, kLinear, kRamp, ABMConfig{}, seeds, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Batch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
