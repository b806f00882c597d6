#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sold/dual.hpp"

namespace sold {

/// Dense row-major matrix of duals, sized for chart-dimension work.
struct DualMatrix {
  int rows = 0, cols = 0;
  std::vector<Dual> v;

  DualMatrix() = default;
  DualMatrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c) {}
  Dual& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  const Dual& at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
};

/// Solves A X = B in-place by Gauss elimination with partial pivoting on the
/// value part. Dual arithmetic carries the derivatives through exactly.
inline DualMatrix dual_solve(DualMatrix a, DualMatrix b) {
  const int n = a.rows;
  if (a.cols != n || b.rows != n) throw std::invalid_argument("dual_solve: shape mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a.at(r, col).val) > std::abs(a.at(piv, col).val)) piv = r;
    if (std::abs(a.at(piv, col).val) < 1e-14)
      throw std::runtime_error("dual_solve: singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
      for (int c = 0; c < b.cols; ++c) std::swap(b.at(piv, c), b.at(col, c));
    }
    const Dual inv = 1.0 / a.at(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Dual factor = a.at(r, col) * inv;
      for (int c = col; c < n; ++c) a.at(r, c) = a.at(r, c) - factor * a.at(col, c);
      for (int c = 0; c < b.cols; ++c) b.at(r, c) = b.at(r, c) - factor * b.at(col, c);
    }
  }
  for (int r = 0; r < n; ++r) {
    const Dual inv = 1.0 / a.at(r, r);
    for (int c = 0; c < b.cols; ++c) b.at(r, c) = b.at(r, c) * inv;
  }
  return b;
}

inline DualMatrix dual_inverse(const DualMatrix& a) {
  DualMatrix id(a.rows, a.rows);
  for (int i = 0; i < a.rows; ++i) id.at(i, i) = Dual(1.0);
  return dual_solve(a, id);
}

}  // namespace sold
