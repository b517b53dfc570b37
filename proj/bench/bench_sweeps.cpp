// Serial reference vs OpenMP sweeps. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "wsq/coincidence.hpp"
#include "wsq/hom.hpp"
#include "wsq/homodyne.hpp"
#include "wsq/parallel.hpp"
#include "wsq/wsdecomp.hpp"

using namespace wsq;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

const WindowedBeta& cw60() {
  static const WindowedBeta wb = windowed_beta(double_gaussian_cw(1.0), cplx(1.0, 0.0), BandlimitPreset::Minimal, 2,
                                               WindowSpec{0.0, 60, 0});
  return wb;
}

void BM_HomDipCurve(benchmark::State& st) {
  HomSetup s;
  s.model = double_gaussian_pulsed(5.0, 1.0);
  s.beta_circ = cplx(0.5, 0.0);
  s.oversample_k = 4;
  s.q_range = {-16, 16};
  for (auto _ : st) benchmark::DoNotOptimize(hom_dip_curve(s, exec_of(st)));
}

void BM_SpectrumSweep(benchmark::State& st) {
  const auto& wb = cw60();
  const CMatrix b = 0.1 * wb.part.betaJ;
  std::vector<double> om;
  for (int i = 0; i < 199; ++i) om.push_back((-0.99 + 0.01 * i) * 0.5 * wb.grid.omega);
  for (auto _ : st) benchmark::DoNotOptimize(spectrum_sweep(b, wb.grid, om, exec_of(st)));
}

void BM_StrengthSweep(benchmark::State& st) {
  const auto& wb = cw60();
  std::vector<double> betas;
  for (int i = 0; i < 15; ++i) betas.push_back(0.02 + 0.02 * i);
  for (auto _ : st) benchmark::DoNotOptimize(strength_sweep(wb.part.betaJ, wb.grid, betas, exec_of(st)));
}

void BM_VisibilitySweep(benchmark::State& st) {
  const auto& wb = cw60();
  std::vector<double> betas;
  for (int i = 0; i < 12; ++i) betas.push_back(0.02 + 0.04 * i);
  for (auto _ : st)
    benchmark::DoNotOptimize(visibility_sweep(wb.part.betaJ, betas, {1.0, 0.01}, 2000, 1e-10, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_HomDipCurve)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StrengthSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VisibilitySweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
