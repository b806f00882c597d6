#include <benchmark/benchmark.h>

#include "sold/catalog.hpp"

namespace {

void BM_Obstruction(benchmark::State& state, const char* id) {
  const sold::GeometryBundle& b = sold::get_geometry(id);
  std::vector<sold::Point> pts = sold::sample_on_submanifold(b.chart, 16, 0);
  size_t i = 0;
  for (auto _ : state) {
    const sold::Point& pt = pts[i++ % pts.size()];
    benchmark::DoNotOptimize(
        sold::soldering_obstruction(b.g.tensor(), b.chart, b.norm, 0, pt).max_abs());
  }
}

void BM_SolderingForm(benchmark::State& state, const char* id) {
  const sold::GeometryBundle& b = sold::get_geometry(id);
  std::vector<sold::Point> pts = sold::sample_on_submanifold(b.chart, 16, 0);
  size_t i = 0;
  for (auto _ : state) {
    const sold::Point& pt = pts[i++ % pts.size()];
    benchmark::DoNotOptimize(sold::soldering_form(*b.J, b.chart, b.norm, pt).max_abs());
  }
}

void BM_KahlerResidual(benchmark::State& state, const char* id) {
  const sold::GeometryBundle& b = sold::get_geometry(id);
  std::vector<sold::Point> pts = sold::sample_on_submanifold(b.chart, 16, 0);
  size_t i = 0;
  for (auto _ : state) {
    const sold::Point& pt = pts[i++ % pts.size()];
    benchmark::DoNotOptimize(sold::residual_kahler_identity(b.g, *b.J, b.chart, b.norm, pt));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Obstruction, polar, "polar_circle");
BENCHMARK_CAPTURE(BM_Obstruction, graph, "graph_surface");
BENCHMARK_CAPTURE(BM_SolderingForm, parabola, "parabola_complex_curve");
BENCHMARK_CAPTURE(BM_KahlerResidual, parabola, "parabola_complex_curve");
BENCHMARK_CAPTURE(BM_KahlerResidual, j6, "nonintegrable_J6");

BENCHMARK_MAIN();
