#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "sold/chart.hpp"
#include "sold/expr.hpp"

namespace sold {

/// Declared symmetry over the covariant slot group (what the engine needs:
/// metrics and 2-forms). Checked numerically where it matters.
enum class Symmetry { none, symmetric_cov, antisymmetric_cov };

/// Pointwise component values of a (p,q) tensor. Covariant slots first in the
/// flat index, matching the argument order A(Y_1..Y_q, xi_1..xi_p).
struct TensorValue {
  int m = 0, p = 0, q = 0;
  std::vector<double> v;  // size m^(p+q), row-major over (u_1..u_q, v_1..v_p)

  TensorValue() = default;
  TensorValue(int m_, int p_, int q_);

  int rank() const { return p + q; }
  size_t flat(std::span<const int> idx) const;
  double& at(std::span<const int> idx) { return v[flat(idx)]; }
  double at(std::span<const int> idx) const { return v[flat(idx)]; }
  double& at(std::initializer_list<int> idx) { return v[flat({idx.begin(), idx.size()})]; }
  double at(std::initializer_list<int> idx) const { return v[flat({idx.begin(), idx.size()})]; }

  double max_abs() const;
};

/// Component values plus all first partials at a point.
struct TensorJet {
  TensorValue value;                  // components
  std::vector<TensorValue> partial;   // partial[k] = d/dx^k of every component
};

/// A (p,q) tensor field on a chart: an array of differentiable component
/// functions. Immutable after construction.
class TensorField {
 public:
  TensorField(int m, int p, int q, Symmetry sym = Symmetry::none);

  static TensorField zero(int m, int p, int q) { return TensorField(m, p, q); }
  static TensorField identity_1_1(int m);
  /// Builds a (p,q) field from constant components (same layout as TensorValue).
  static TensorField constant(int m, int p, int q, const std::vector<double>& comps,
                              Symmetry sym = Symmetry::none);

  int dim() const { return m_; }
  int contravariant_rank() const { return p_; }
  int covariant_rank() const { return q_; }
  int rank() const { return p_ + q_; }
  Symmetry symmetry() const { return sym_; }

  const ScalarFieldExpr& component(std::span<const int> idx) const;
  ScalarFieldExpr& component(std::span<const int> idx);
  const ScalarFieldExpr& component(std::initializer_list<int> idx) const {
    return component(std::span<const int>(idx.begin(), idx.size()));
  }
  ScalarFieldExpr& component(std::initializer_list<int> idx) {
    return component(std::span<const int>(idx.begin(), idx.size()));
  }

  TensorValue eval(const Point& pt, const SliceChart& chart) const;
  TensorValue eval(const Point& pt) const;  // no domain check
  TensorJet jet(const Point& pt) const;

 private:
  int m_, p_, q_;
  Symmetry sym_;
  std::vector<ScalarFieldExpr> comps_;
  size_t flat(std::span<const int> idx) const;
};

/// Iterates all multi-indices of the given rank in base m; f receives the index.
template <typename F>
void for_each_index(int m, int rank, F&& f) {
  std::vector<int> idx(rank, 0);
  if (rank == 0) {
    f(std::span<const int>(idx));
    return;
  }
  while (true) {
    f(std::span<const int>(idx));
    int k = rank - 1;
    while (k >= 0 && ++idx[k] == m) idx[k--] = 0;
    if (k < 0) break;
  }
}

TensorValue eval_tensor(const TensorField& t, const SliceChart& chart, const Point& pt);
TensorJet eval_jacobian(const TensorField& t, const SliceChart& chart, const Point& pt);

}  // namespace sold
