#include <benchmark/benchmark.h>

#include <cmath>

#include "specreg/estimator.hpp"
#include "specreg/gallery.hpp"
#include "specreg/illposedness.hpp"
#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"
#include "specreg/noise.hpp"
#include "specreg/rate_study.hpp"
#include "specreg/rearrangement.hpp"

using namespace specreg;

namespace {

Multiplier exp_decay() {
  return Multiplier::custom("exp(-s)", [](double s) { return std::exp(-s); }, 1.0);
}

MultiplicationOperator harmonic(std::size_t n) {
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = 1.0 / static_cast<double>(j + 1);
  auto inst = compact_case(std::move(b), n);
  return MultiplicationOperator(inst.multiplier, inst.space);
}

void BM_DecreasingRearrangement(benchmark::State& state) {
  const auto space = MeasureSpace::interval(0.0, 4.0, static_cast<std::size_t>(state.range(0)));
  const auto b = Multiplier::custom("wave", [](double s) { return s * (1.2 + std::cos(7 * s)); }, 10);
  const auto v = b.values_on(space);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decreasing_rearrangement(v, space.weights()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecreasingRearrangement)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_IllposednessProfile(benchmark::State& state) {
  const MultiplicationOperator op(exp_decay(),
                                  MeasureSpace::halfline(20.0, static_cast<std::size_t>(state.range(0))));
  const auto grid = log_grid(1e-4, 0.9, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_illposedness(op, grid));
  }
}
BENCHMARK(BM_IllposednessProfile)->Arg(1 << 12)->Arg(1 << 16);

void BM_WhiteNoiseSample(benchmark::State& state) {
  const auto space = MeasureSpace::counting(static_cast<std::size_t>(state.range(0)));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_white(WhiteNoiseSampler(7, stream++), space));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WhiteNoiseSample)->Arg(500)->Arg(1 << 16);

void BM_MonteCarlo(benchmark::State& state) {
  const auto op = harmonic(500);
  const auto phi = IndexFunction::power(1.0);
  const auto problem = source_problem(op, phi);
  const auto scheme = truncate(spectral_cutoff());
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_rms(scheme, 0.01, problem.op, problem.solution, 1e-4,
                                             WhiteNoiseSampler(1, 0), 200,
                                             static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->UseRealTime();

void BM_VarianceIntegral(benchmark::State& state) {
  const MultiplicationOperator op(Multiplier::power_decay(1.0), MeasureSpace::halfline(16, 4096));
  const auto scheme = lavrentiev();
  for (auto _ : state) {
    benchmark::DoNotOptimize(variance_integral(scheme, 0.01, op));
  }
}
BENCHMARK(BM_VarianceIntegral);

void BM_DeconvolutionTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DeconvolutionProblem p({KernelFamily::gaussian, 1.0}, 40.0, n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(0.01 * static_cast<double>(i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.from_frequency(p.to_frequency(y)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeconvolutionTransform)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

void BM_WhiteRateStudy(benchmark::State& state) {
  const auto phi = IndexFunction::power(1.0);
  const auto problem = source_problem(harmonic(500), phi);
  RateStudyConfig cfg;
  cfg.mode = NoiseMode::white;
  cfg.deltas = log_grid(1e-6, 1e-2, 9);
  cfg.replications = 200;
  cfg.threads = 4;
  const auto scheme = truncate(spectral_cutoff());
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_rates(problem, scheme, phi, cfg));
  }
}
BENCHMARK(BM_WhiteRateStudy)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
