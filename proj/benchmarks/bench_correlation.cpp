#include <benchmark/benchmark.h>

#include <random>

#include "nematic/correlation.hpp"
#include "nematic/heatflow.hpp"

using namespace nematic;

namespace {

TensorField smooth_random(const GridSpec& g) {
  std::mt19937 rng(1);
  std::normal_distribution<double> d;
  TensorField f(g);
  for (std::size_t c = 0; c < 5; ++c)
    for (auto& v : f.plane(c)) v = d(rng);
  return apply_heat(f, 0.5);
}

void BM_CorrelateSingle(benchmark::State& state) {
  const auto f = smooth_random(GridSpec(static_cast<int>(state.range(0)), 32.0));
  for (auto _ : state) {
    auto p = correlate_single(f);
    benchmark::DoNotOptimize(p.c_values.data());
  }
}
BENCHMARK(BM_CorrelateSingle)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EnsembleCorrelate(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), 32.0);
  const auto a = smooth_random(g);
  const auto b = apply_heat(a, 1.0);
  auto c = apply_heat(a, 2.0);
  const auto bt = b.time();
  auto a2 = a;
  a2.set_time(bt);
  c.set_time(bt);
  for (auto _ : state) {
    auto p = ensemble_correlate({&a2, &b, &c}, {0.5, 0.3, 0.2});
    benchmark::DoNotOptimize(p.c_values.data());
  }
}
BENCHMARK(BM_EnsembleCorrelate)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
