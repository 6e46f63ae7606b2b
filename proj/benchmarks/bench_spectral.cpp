#include <benchmark/benchmark.h>

#include <random>

#include "eulci/fft.hpp"
#include "eulci/ops.hpp"

using namespace eulci;

namespace {

SpectralField random_vec(const Grid3& g, unsigned seed) {
  SpectralField f(g, FieldKind::vector3);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& comp : f.c)
    for (auto& v : comp) v = cplx(gauss(rng), gauss(rng));
  zero_nyquist(f);
  hermitian_symmetrize(f);
  remove_mean(f);
  return f;
}

}  // namespace

static void BM_synthesize(benchmark::State& state) {
  Grid3 g(int(state.range(0)));
  SpectralField f = random_vec(g, 5);
  for (auto _ : state) {
    RealField r = synthesize(f);
    benchmark::DoNotOptimize(r.r[0].data());
  }
}
BENCHMARK(BM_synthesize)->Arg(48)->Arg(64)->Arg(96);

static void BM_analyze(benchmark::State& state) {
  Grid3 g(int(state.range(0)));
  RealField r = synthesize(random_vec(g, 7));
  for (auto _ : state) {
    SpectralField f = analyze(r);
    benchmark::DoNotOptimize(f.c[0].data());
  }
}
BENCHMARK(BM_analyze)->Arg(48)->Arg(64)->Arg(96);

static void BM_inverse_divergence(benchmark::State& state) {
  Grid3 g(int(state.range(0)));
  SpectralField f = random_vec(g, 9);
  for (auto _ : state) {
    SpectralField R = inverse_divergence(f);
    benchmark::DoNotOptimize(R.c[0].data());
  }
}
BENCHMARK(BM_inverse_divergence)->Arg(48)->Arg(64);

static void BM_sym_outer(benchmark::State& state) {
  Grid3 g(int(state.range(0)));
  RealField a = synthesize(random_vec(g, 11));
  RealField b = synthesize(random_vec(g, 13));
  for (auto _ : state) {
    RealField s = sym_outer(a, b);
    benchmark::DoNotOptimize(s.r[0].data());
  }
}
BENCHMARK(BM_sym_outer)->Arg(64)->Arg(96);

BENCHMARK_MAIN();
