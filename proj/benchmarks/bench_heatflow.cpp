#include <benchmark/benchmark.h>

#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"

using namespace nematic;

namespace {

void BM_ApplyHeat(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 40.0);
  const auto f = gaussian_tensor(g, make_uniaxial(1.0), 1.0);
  for (auto _ : state) {
    auto out = apply_heat(f, 2.0);
    benchmark::DoNotOptimize(out.plane(0).data());
  }
}
BENCHMARK(BM_ApplyHeat)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_HeatApplyPlan(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 40.0);
  const std::vector<double> times{2.0};
  const HeatApplyPlan plan(g, times);
  const auto f = gaussian_tensor(g, make_uniaxial(1.0), 1.0);
  for (auto _ : state) {
    auto out = plan.apply(f, 2.0);
    benchmark::DoNotOptimize(out.plane(0).data());
  }
}
BENCHMARK(BM_HeatApplyPlan)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ZeroMeanResidual(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 40.0);
  const auto u = gaussian_amplitude(g, 1.0, 2.0);
  for (auto _ : state) {
    auto m = zero_mean_residual(u, 5.0);
    benchmark::DoNotOptimize(m.plane(0).data());
  }
}
BENCHMARK(BM_ZeroMeanResidual)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
