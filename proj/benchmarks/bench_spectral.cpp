#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bo2d/diagnostics.hpp"
#include "bo2d/initial_conditions.hpp"
#include "bo2d/integrator.hpp"
#include "bo2d/spectral_ops.hpp"

namespace {

bo2d::SpectralField2D pulse(std::size_t nx, std::size_t ny) {
  using std::numbers::pi;
  auto g = bo2d::make_grid(nx, ny, 128.0 * pi, 32.0 * pi);
  return bo2d::realize(bo2d::GaussianIC{0.5412, 6.25, 12.5, std::nullopt, std::nullopt}, g).field;
}

void BM_Rhs(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = pulse(n, n / 4);
  bo2d::Rk4Stepper s(a.grid_ptr(), {});
  std::vector<bo2d::Complex> in(a.spectral().begin(), a.spectral().end()), out(in.size());
  for (auto _ : st) {
    s.eval_rhs(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Rhs)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_Rk4Step(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto a = pulse(n, n / 4);
  bo2d::Rk4Stepper s(a.grid_ptr(), {});
  auto c = a.spectral_mut();
  for (auto _ : st) {
    s.step(c, 1e-3);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_Rk4Step)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LocatePeak(benchmark::State& st) {
  const auto a = pulse(512, 128);
  const auto mode = st.range(0) ? bo2d::PeakRefinement::spectral : bo2d::PeakRefinement::quadratic;
  for (auto _ : st) benchmark::DoNotOptimize(bo2d::locate_peak(a, 0.0, mode));
}
BENCHMARK(BM_LocatePeak)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Conserved(benchmark::State& st) {
  const auto a = pulse(512, 128);
  for (auto _ : st) benchmark::DoNotOptimize(bo2d::conserved(a));
}
BENCHMARK(BM_Conserved)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
