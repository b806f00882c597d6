#include "sold/sampling.hpp"

namespace sold {

std::vector<Point> sample_on_submanifold(const SliceChart& chart, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  const int k = chart.normal_dim();
  for (int s = 0; s < count; ++s) {
    std::vector<double> c(chart.ambient_dim, 0.0);
    for (int u = k; u < chart.ambient_dim; ++u)
      c[u] = uniform_draw(rng, chart.domain.lo[u], chart.domain.hi[u]);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

std::vector<Point> sample_in_domain(const SliceChart& chart, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> c(chart.ambient_dim, 0.0);
    for (int i = 0; i < chart.ambient_dim; ++i)
      c[i] = uniform_draw(rng, chart.domain.lo[i], chart.domain.hi[i]);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

}  // namespace sold
