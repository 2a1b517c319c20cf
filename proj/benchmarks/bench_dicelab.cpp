#include <benchmark/benchmark.h>

#include "dicelab/coefficients.hpp"
#include "dicelab/die.hpp"
#include "dicelab/experiment.hpp"
#include "dicelab/kernel.hpp"
#include "dicelab/limit.hpp"
#include "dicelab/rng.hpp"
#include "dicelab/sampling.hpp"
#include "dicelab/spectrum.hpp"

namespace {

using namespace dicelab;

void bm_compare(benchmark::State& state) {
  const int n = int(state.range(0));
  Rng rng(1, "bench-compare");
  auto s = make_sampler(Model::multiset, n, SamplerMethod::mcmc);
  const Die a = s->sample(rng);
  const Die b = s->sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(compare(a, b));
}
BENCHMARK(bm_compare)->Arg(100)->Arg(1000);

void bm_margin_via_coefficients(benchmark::State& state) {
  const int n = int(state.range(0));
  Rng rng(2, "bench-coeff");
  auto s = make_sampler(Model::multiset, n, SamplerMethod::mcmc);
  const FrequencyVector fa = s->sample_frequency(rng);
  const CoefficientSequence cb = coefficient_sequence(s->sample_frequency(rng));
  for (auto _ : state) benchmark::DoNotOptimize(doubled_margin_via_coefficients(fa, cb));
}
BENCHMARK(bm_margin_via_coefficients)->Arg(100)->Arg(1000);

void bm_sampler(benchmark::State& state, Model model, SamplerMethod method) {
  const int n = int(state.range(0));
  Rng rng(3, "bench-sampler");
  auto s = make_sampler(model, n, method);
  for (auto _ : state) benchmark::DoNotOptimize(s->sample_frequency(rng));
}
BENCHMARK_CAPTURE(bm_sampler, multiset_exact_dp, Model::multiset, SamplerMethod::exact_dp)
    ->Arg(64)
    ->Arg(128);
BENCHMARK_CAPTURE(bm_sampler, balanced_exact_dp, Model::balanced_sequence,
                  SamplerMethod::exact_dp)
    ->Arg(64)
    ->Arg(128);
BENCHMARK_CAPTURE(bm_sampler, multiset_mcmc, Model::multiset, SamplerMethod::mcmc)
    ->Arg(200)
    ->Arg(1000);
BENCHMARK_CAPTURE(bm_sampler, balanced_mcmc, Model::balanced_sequence, SamplerMethod::mcmc)
    ->Arg(200)
    ->Arg(1000);

void bm_limit_entry(benchmark::State& state) {
  const int L = int(state.range(0));
  LimitSpectrum spec;
  spec.n_grid = {64, 96};
  spec.sigmas.resize(std::size_t(L));
  for (int l = 0; l < L; ++l) spec.sigmas[std::size_t(l)] = 0.225 / double(l + 1);
  spec.uncertainty.assign(std::size_t(L), 0.0);
  const LimitSampler sampler(spec, L, TailPolicy{1e12});
  Rng rng(4, "bench-limit");
  std::vector<double> g;
  for (auto _ : state) {
    sampler.draw_gaussians(2, rng, g);
    benchmark::DoNotOptimize(sampler.entry(g, 0, 1));
  }
}
BENCHMARK(bm_limit_entry)->Arg(16)->Arg(400);

void bm_build_m_star(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_m_star(n, KernelConstruction::closed_form));
  }
}
BENCHMARK(bm_build_m_star)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_spectrum(benchmark::State& state) {
  const int n = int(state.range(0));
  const SkewKernelMatrix m = build_m_star(n, KernelConstruction::closed_form);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(m));
}
BENCHMARK(bm_spectrum)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
