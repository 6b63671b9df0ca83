#include <benchmark/benchmark.h>

#include "nematic/dynamics.hpp"
#include "nematic/heatflow.hpp"
#include "nematic/initial_data.hpp"

using namespace nematic;

namespace {

const ModelParams kParams(1.0, 10.0, 1.0);

void BM_StepTensor(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 24.0);
  const auto scheme = state.range(1) ? Scheme::ETD2 : Scheme::ETD1;
  auto q = uniaxial_lift(apply_heat(plateau_amplitude(g, 4.0, lambda_star(kParams)), 0.25));
  for (auto _ : state) {
    q = step_tensor(q, kParams, 0.01, scheme);
    benchmark::DoNotOptimize(q.plane(0).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_StepTensor)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_StepScalar(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 24.0);
  auto l = apply_heat(plateau_amplitude(g, 4.0, lambda_star(kParams)), 0.25);
  for (auto _ : state) {
    l = step_scalar(l, kParams, 0.01);
    benchmark::DoNotOptimize(l.plane(0).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_StepScalar)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_StepTransformed(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 56.0);
  auto r = uniaxial_lift(power_tail_amplitude(g, 0.04, 1.0));
  for (auto _ : state) {
    r = step_transformed(r, kParams, 0.05);
    benchmark::DoNotOptimize(r.plane(0).data());
  }
}
BENCHMARK(BM_StepTransformed)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
