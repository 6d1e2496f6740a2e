#include <benchmark/benchmark.h>

#include "swwlab/catalog.hpp"
#include "swwlab/rsww.hpp"
#include "swwlab/verify.hpp"

namespace {

using namespace swwlab;

void BM_GridSS(benchmark::State& state) {
  const auto d = table5(3, {1.0, 0.0});
  const int n = static_cast<int>(state.range(0));
  const Grid g{{0, 0, 1}, {-5, 5, n}, {-5, 5, n}};
  SweepOptions sw;
  sw.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_grid(d, g, {}, sw));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GridSS)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_GridRotatingES(benchmark::State& state) {
  const auto d = table5(2, {1.0, 1.0});
  const Grid g{{0, 0, 1}, {-2, 2, 64}, {-2, 2, 64}};
  SweepOptions sw;
  sw.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_rsww_grid(d, g, 1.0, TimeShift::standard(1.0), {}, sw));
}
BENCHMARK(BM_GridRotatingES)->Unit(benchmark::kMillisecond);

void BM_Residual(benchmark::State& state) {
  const auto d = representative(Family::SS_MIXED);
  const Point pt{0.1, 0.2, 0.3};
  const auto root = eval_sww(d, pt).report.root;
  const Field f = anchored_field(d, root, 1e-14);
  for (auto _ : state)
    benchmark::DoNotOptimize(pde_residual(f, pt, d.params, SystemKind::SWW, 1e-3));
}
BENCHMARK(BM_Residual);

} // namespace
