#include "minsurf/catalog.hpp"
#include "minsurf/legendre.hpp"

#include <benchmark/benchmark.h>

using namespace minsurf;

namespace {

const char *const kNames[] = {"phi6", "phi9", "phi12"};

ContactExpr generator(int index) {
  static const GeneratorCatalog catalog = GeneratorCatalog::builtin();
  return catalog.get_pure(kNames[index]);
}

GridSpec grid(int n) {
  GridSpec g;
  g.p_count = g.q_count = n;
  return g;
}

void BM_serial(benchmark::State &state) {
  ContactExpr phi = generator(static_cast<int>(state.range(0)));
  GridSpec g = grid(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_surface_serial(phi, g));
  state.SetLabel(kNames[state.range(0)]);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}

void BM_openmp(benchmark::State &state) {
  ContactExpr phi = generator(static_cast<int>(state.range(0)));
  GridSpec g = grid(static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_surface(phi, g));
  state.SetLabel(kNames[state.range(0)]);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}

// Symbolic setup alone: derivatives of x, y, z and slot compilation.
void BM_setup(benchmark::State &state) {
  ContactExpr phi = generator(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(LegendreSurface(phi));
  state.SetLabel(kNames[state.range(0)]);
}

} // namespace

BENCHMARK(BM_serial)->ArgsProduct({{0, 1, 2}, {50, 100}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_openmp)->ArgsProduct({{0, 1, 2}, {50, 100}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_setup)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
