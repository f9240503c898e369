#include <benchmark/benchmark.h>

#include <vector>

#include "dnls/evolve.hpp"
#include "dnls/grid.hpp"
#include "dnls/modulation.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace {

using namespace dnls;

void BM_FftRoundtrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  Field u = wave_field(WaveParams{1.0, 0.5, 0.0, 0.0}, g);
  Fft fft(n);
  std::vector<cd> hat(n), back(n);
  for (auto _ : state) {
    fft.forward(u.v.data(), hat.data());
    fft.inverse(hat.data(), back.data());
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_FftRoundtrip)->Arg(256)->Arg(1024)->Arg(4096);

void BM_WaveField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  const WaveParams p{1.0, 0.5, 1.0, 0.7};
  for (auto _ : state) {
    Field u = wave_field(p, g);
    benchmark::DoNotOptimize(u.v.data());
  }
}
BENCHMARK(BM_WaveField)->Arg(1024)->Arg(4096);

void BM_Rhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  Field u = wave_field(WaveParams{1.0, 0.5, 0.0, 0.0}, g);
  for (auto _ : state) {
    Field f = rhs(u);
    benchmark::DoNotOptimize(f.v.data());
  }
}
BENCHMARK(BM_Rhs)->Arg(512)->Arg(2048);

void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  Field u = wave_field(WaveParams{1.0, 0.5, 0.0, 0.0}, g);
  Stepper st(g, suggest_dt(g, 2.0));
  st.load(u);
  for (auto _ : state) st.advance();
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_Step)->Arg(512)->Arg(2048);

void BM_OperatorAssembly(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  for (auto _ : state) {
    LinOp op = linearized_op(1.0, 0.5, g, OperatorKind::plus);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(BM_OperatorAssembly)->Arg(256)->Arg(512);

void BM_EigenBottom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GridSpec g = make_grid(20.0, n);
  LinOp op = linearized_op(1.0, 0.5, g, OperatorKind::plus);
  for (auto _ : state) {
    auto pairs = eigen_bottom(op, 2);
    benchmark::DoNotOptimize(pairs.data());
  }
}
BENCHMARK(BM_EigenBottom)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FitSingle(benchmark::State& state) {
  GridSpec g = make_grid(20.0, 512);
  const WaveParams truth{1.05, 0.4, 0.3, 0.9};
  Field u = wave_field(truth, g);
  WaveParams guess{1.0, 0.5, 0.0, 1.0};
  for (auto _ : state) {
    SingleFit fit = fit_single(u, guess, 1e-10);
    benchmark::DoNotOptimize(fit.p);
  }
}
BENCHMARK(BM_FitSingle);

void BM_OrbitDistance(benchmark::State& state) {
  GridSpec g = make_grid(20.0, 1024);
  Field u = wave_field(WaveParams{1.0, 0.5, 0.8, 0.3}, g);
  for (auto _ : state) {
    OrbitDistance d = orbit_distance(u, 1.0, 0.5);
    benchmark::DoNotOptimize(d.dist);
  }
}
BENCHMARK(BM_OrbitDistance);

}  // namespace

BENCHMARK_MAIN();
