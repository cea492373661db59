#include <benchmark/benchmark.h>

#include "qdephase/dynamics.hpp"
#include "qdephase/numerics.hpp"
#include "qdephase/processes.hpp"
#include "qdephase/states.hpp"
#include "qdephase/timescales.hpp"

using namespace qdephase;

static void BM_LambertW0(benchmark::State& state) {
  double z = -0.36;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(z));
    z += 1e-6;
    if (z > 10.0) z = -0.36;
  }
}
BENCHMARK(BM_LambertW0);

static void BM_BetaInverseOU(benchmark::State& state) {
  const auto spec = ProcessSpec::ou(1.0);
  double b = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_inverse(spec, b));
    b += 1e-5;
    if (b > 2.0) b = 0.001;
  }
}
BENCHMARK(BM_BetaInverseOU);

static void BM_NegativityClosedForm(benchmark::State& state) {
  const BellMixture m(0.4, 0.1, 0.3, 0.2);
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity_bell_mixture(m, x, EnvTopology::Independent));
    x *= 0.999999;
    if (x < 0.01) x = 1.0;
  }
}
BENCHMARK(BM_NegativityClosedForm);

static void BM_NegativityEigenRoute(benchmark::State& state) {
  const BellMixture m(0.4, 0.1, 0.3, 0.2);
  const EvolutionParams p{1.0, 1.0, ProcessSpec::ou(1.0), EnvTopology::Independent};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity(evolve(m, p, t)));
    t += 1e-4;
    if (t > 3.0) t = 0.0;
  }
}
BENCHMARK(BM_NegativityEigenRoute);

static void BM_SamplePathOU(benchmark::State& state) {
  const TimeGrid grid(1.0, static_cast<int>(state.range(0)));
  const PathSampler sampler(ProcessSpec::ou(1.0), grid);
  SeededRng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rng));
  }
}
BENCHMARK(BM_SamplePathOU)->Arg(256)->Arg(1024);

static void BM_SamplePathFgn(benchmark::State& state) {
  const TimeGrid grid(1.0, static_cast<int>(state.range(0)));
  const PathSampler sampler(ProcessSpec::fgn(0.9), grid);
  SeededRng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rng));
  }
}
BENCHMARK(BM_SamplePathFgn)->Arg(256)->Arg(1024);

static void BM_FgnFactorization(benchmark::State& state) {
  const TimeGrid grid(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PathSampler sampler(ProcessSpec::fgn(0.7), grid);
    benchmark::DoNotOptimize(sampler.deviate_count());
  }
}
BENCHMARK(BM_FgnFactorization)->Arg(256)->Arg(512);

static void BM_McEvolveOU(benchmark::State& state) {
  const BellMixture m(0.4, 0.1, 0.3, 0.2);
  const EvolutionParams p{1.0, 1.0, ProcessSpec::ou(1.0), EnvTopology::Independent};
  const SeededRng rng(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_evolve(m, p, 1.0, static_cast<int>(state.range(0)), 256, rng, 1));
  }
}
BENCHMARK(BM_McEvolveOU)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_PreservingTimeBellOU(benchmark::State& state) {
  const ThresholdRatio r(0.99);
  double gamma = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(preserving_time_bell(ProcessSpec::ou(gamma), 1.0, r,
                                                  EnvTopology::Independent));
    gamma *= 1.01;
    if (gamma > 100.0) gamma = 0.01;
  }
}
BENCHMARK(BM_PreservingTimeBellOU);

BENCHMARK_MAIN();
