#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sold/dual.hpp"

namespace sold {

/// Axis-aligned box of chart validity.
struct Box {
  std::vector<double> lo, hi;

  bool contains(std::span<const double> x) const {
    if (x.size() != lo.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
};

/// A single adapted chart: the submanifold is the slice where the first
/// (ambient_dim - sub_dim) coordinates vanish. Normal coordinates come first,
/// tangent coordinates last.
struct SliceChart {
  int ambient_dim = 0;  // m
  int sub_dim = 0;      // n
  Box domain;

  SliceChart(int m, int n, Box box) : ambient_dim(m), sub_dim(n), domain(std::move(box)) {
    if (!(0 < n && n < m)) throw std::invalid_argument("SliceChart: need 0 < n < m");
    if (m > kMaxDim) throw std::invalid_argument("SliceChart: ambient_dim exceeds kMaxDim");
    if (static_cast<int>(domain.lo.size()) != m || static_cast<int>(domain.hi.size()) != m)
      throw std::invalid_argument("SliceChart: domain box dimension mismatch");
  }

  int normal_dim() const { return ambient_dim - sub_dim; }

  /// Index of the u-th tangent coordinate in ambient indexing.
  int tangent_index(int u) const { return normal_dim() + u; }
};

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  // On-N membership is exact, not tolerance-based.
  bool on_submanifold(const SliceChart& chart) const {
    for (int a = 0; a < chart.normal_dim(); ++a)
      if (coords[a] != 0.0) return false;
    return true;
  }
};

inline void require_in_domain(const SliceChart& chart, const Point& p) {
  if (static_cast<int>(p.coords.size()) != chart.ambient_dim)
    throw std::invalid_argument("point dimension does not match chart");
  if (!chart.domain.contains(p.coords))
    throw std::domain_error("point outside chart domain box");
}

inline void require_on_submanifold(const SliceChart& chart, const Point& p) {
  require_in_domain(chart, p);
  if (!p.on_submanifold(chart))
    throw std::invalid_argument("point is not on the submanifold slice");
}

}  // namespace sold
