#include <benchmark/benchmark.h>

#include "swwlab/specfn.hpp"

namespace {

void BM_Fresnel(benchmark::State& state) {
  const double x = state.range(0) / 10.0;
  double s = 0, c = 0;
  for (auto _ : state) {
    swwlab::fresnel(x, s, c);
    benchmark::DoNotOptimize(s);
    benchmark::DoNotOptimize(c);
  }
}
// series branch and continued-fraction branch
BENCHMARK(BM_Fresnel)->Arg(5)->Arg(30)->Arg(100);

void BM_Weierstrass(benchmark::State& state) {
  const swwlab::WeierstrassInvariants inv{4.0 / 3.0, 8.0 / 27.0 + 4.0 / 3.0 * 0.0625};
  const double z = state.range(0) / 10.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(swwlab::weierstrass_p(z, inv));
}
BENCHMARK(BM_Weierstrass)->Arg(2)->Arg(10)->Arg(40);

} // namespace
