#include <benchmark/benchmark.h>

#include "pbholo/fft.hpp"
#include "pbholo/grating.hpp"
#include "pbholo/holo_design.hpp"
#include "pbholo/propagation.hpp"

namespace {

void BM_Fft2Centered(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<pbholo::Complex> data(n * n, pbholo::Complex(1.0, 0.5));
  for (auto _ : state) {
    pbholo::fft2_centered(data, n, pbholo::FftDirection::Forward);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fft2Centered)->Arg(256)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_AngularSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  pbholo::ComplexField field(n, 0.5e-6, 543e-9);
  field(n / 2, n / 2) = 1.0;
  for (auto _ : state) {
    auto out = pbholo::angular_spectrum(field, 20e-6);
    benchmark::DoNotOptimize(out.samples().data());
  }
}
BENCHMARK(BM_AngularSpectrum)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PerCellHologram(benchmark::State& state) {
  const pbholo::SystemGeometry geom;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto map = pbholo::assemble_hologram(geom, pbholo::DesignMode::PerCell, n, 8);
    benchmark::DoNotOptimize(map.values().data());
  }
}
BENCHMARK(BM_PerCellHologram)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Rcwa(benchmark::State& state) {
  pbholo::GratingGeometry g;
  g.beam = pbholo::Material::constant({4.06, -0.09});
  const int harmonics = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = pbholo::solve_grating(g, 543e-9, harmonics);
    benchmark::DoNotOptimize(r.te.t0);
  }
}
BENCHMARK(BM_Rcwa)->Arg(11)->Arg(15)->Arg(41)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
