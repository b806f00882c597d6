#pragma once

#include <Eigen/Dense>

#include "sold/tensor.hpp"

namespace sold {

/// Christoffel symbols at a point, Gamma^k_{ij}, flat index k*m*m + i*m + j.
struct ChristoffelValue {
  int m = 0;
  std::vector<double> v;

  explicit ChristoffelValue(int m_) : m(m_), v(static_cast<size_t>(m_) * m_ * m_, 0.0) {}
  double& at(int k, int i, int j) { return v[(static_cast<size_t>(k) * m + i) * m + j]; }
  double at(int k, int i, int j) const { return v[(static_cast<size_t>(k) * m + i) * m + j]; }
};

/// Symmetric positive-definite (0,2) tensor field. Degeneracy at an evaluation
/// point is a hard error, never a silent NaN.
class MetricField {
 public:
  explicit MetricField(TensorField g);

  const TensorField& tensor() const { return g_; }
  int dim() const { return g_.dim(); }

  /// Component matrix at a point; throws if not symmetric positive definite.
  Eigen::MatrixXd matrix(const Point& pt) const;
  Eigen::MatrixXd inverse(const Point& pt) const;

  /// Evaluates the component matrix over duals (for expression-level use,
  /// e.g. inside normal-frame component expressions).
  std::vector<Dual> matrix_dual(std::span<const Dual> x) const;

 private:
  TensorField g_;
};

ChristoffelValue christoffels(const MetricField& g, const Point& pt);

}  // namespace sold
