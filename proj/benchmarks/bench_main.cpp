#include <adacut/adacut.hpp>

#include <benchmark/benchmark.h>

using namespace adacut;

namespace {

std::vector<double> observations(std::size_t n)
{
  Rng rng(1);
  return sample_observations(preset("gamma21"), noise_preset("gamma21"), n, rng);
}

void BM_Ecf(benchmark::State& state)
{
  const auto ys = observations(static_cast<std::size_t>(state.range(0)));
  const FrequencyGrid grid(20.0, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(ecf(ys, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_Ecf)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DistinguishedLog(benchmark::State& state)
{
  CpConfig cfg;
  cfg.n = 5000;
  Rng rng(2);
  const auto sample = sample_increments(preset("gauss21"), cfg, rng);
  const auto pair = ecf_with_derivative(sample.values, cfg.grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(distinguished_log_grid(pair.value, pair.derivative));
}
BENCHMARK(BM_DistinguishedLog)->Unit(benchmark::kMicrosecond);

void BM_FourierInvert(benchmark::State& state)
{
  const FrequencyGrid grid(20.0, 0.01);
  const auto phi = SpectralFunction::hermitian_from(grid, [](double u) { return preset("gauss21").cf(u); });
  std::vector<double> xs;
  for (double x = -5.0; x <= 9.0; x += 0.01)
    xs.push_back(x);
  for (auto _ : state)
    benchmark::DoNotOptimize(fourier_invert(phi, 5.0, xs));
}
BENCHMARK(BM_FourierInvert)->Unit(benchmark::kMillisecond);

void BM_DeconvolutionReplicate(benchmark::State& state)
{
  Scenario s;
  s.id = "bench";
  s.problem = Problem::deconvolution;
  s.target = "gamma21";
  s.noise = "gamma21";
  s.n = 1000;
  s.method_set = { Method::adaptive, Method::penalized, Method::oracle };
  s.replicates = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK(BM_DeconvolutionReplicate)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
