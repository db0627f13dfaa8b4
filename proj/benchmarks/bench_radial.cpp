#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "bo2d/ground_state.hpp"
#include "bo2d/radial_grid.hpp"
#include "bo2d/radial_operator.hpp"

namespace {

void BM_G1Hankel(benchmark::State& st) {
  auto g = std::make_shared<const bo2d::RadialGrid>(static_cast<std::size_t>(st.range(0)), 1.0);
  const auto p = bo2d::sample(g, [](double r) { return 1.0 / (1.0 + r * r); });
  for (auto _ : st) benchmark::DoNotOptimize(bo2d::g1_hankel(p));
}
BENCHMARK(BM_G1Hankel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_G1Direct(benchmark::State& st) {
  const auto h = [](double r) { return std::exp(-r * r); };
  for (auto _ : st) benchmark::DoNotOptimize(bo2d::g1_direct(h, 0.7));
}
BENCHMARK(BM_G1Direct)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& st) {
  const auto g = bo2d::default_ground_state_grid(1.0, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(bo2d::solve_ground_state(1.0, g));
}
BENCHMARK(BM_GroundState)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
