#include <benchmark/benchmark.h>

#include "rigged/friedrichs.hpp"
#include "rigged/hardy.hpp"
#include "rigged/nelson.hpp"
#include "rigged/oracle.hpp"
#include "rigged/spectral.hpp"

using namespace rigged;

namespace {

const FriedrichsModel kModel{1.0, 0.1, {FormFactorFamily::kExp, 1.0}};

void BM_EtaFirstSheet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eta(kModel, {1.0, 0.5}, Sheet::kFirst));
}
BENCHMARK(BM_EtaFirstSheet);

void BM_EtaPlus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eta_plus(kModel, 0.99));
}
BENCHMARK(BM_EtaPlus);

void BM_FindResonancePole(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_resonance_pole(kModel));
}
BENCHMARK(BM_FindResonancePole)->Unit(benchmark::kMicrosecond);

void BM_SurvivalAmplitude(benchmark::State& state) {
  const ComplexPole pole = find_resonance_pole(kModel);
  const EnergyWavefunction phi = discrete_state_wavefunction(kModel, resonance_grid(kModel, pole));
  const double t = 2.0 / pole.gamma;
  for (auto _ : state) benchmark::DoNotOptimize(survival_amplitude_exact(phi, t));
  state.counters["nodes"] = static_cast<double>(phi.size());
}
BENCHMARK(BM_SurvivalAmplitude)->Unit(benchmark::kMicrosecond);

void BM_BackgroundContour(benchmark::State& state) {
  const ComplexPole pole = find_resonance_pole(kModel);
  for (auto _ : state) benchmark::DoNotOptimize(background_amplitude_contour(kModel, pole, 2.0 / pole.gamma));
}
BENCHMARK(BM_BackgroundContour)->Unit(benchmark::kMicrosecond);

void BM_OracleDiagonalize(benchmark::State& state) {
  const oracle::DiscretizedModel dm = oracle::discretize(kModel, static_cast<std::size_t>(state.range(0)), 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::diagonalize(dm));
}
BENCHMARK(BM_OracleDiagonalize)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HardyScores(benchmark::State& state) {
  const std::vector<double> g = uniform_grid(-200.0, 200.0, 40001);
  std::vector<cplx> v;
  for (double e : g) v.push_back(1.0 / cplx(e, -1.0));
  const EnergyWavefunction phi(g, v);
  for (auto _ : state) benchmark::DoNotOptimize(hardy_scores(phi));
}
BENCHMARK(BM_HardyScores)->Unit(benchmark::kMillisecond);

void BM_ClassifyCoherent(benchmark::State& state) {
  const Sequence s = coherent_sequence(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_vector(s));
}
BENCHMARK(BM_ClassifyCoherent)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
