#pragma once

#include <optional>
#include <random>

#include "sold/calculus.hpp"
#include "sold/linalg_dual.hpp"

namespace sold {

/// A choice of normal bundle along the submanifold. The Riemannian mode
/// derives the frame from the metric (projection of the normal coordinate
/// fields followed by Gram-Schmidt, in index order); the coordinate mode uses
/// the raw d/dx^a; explicit mode accepts user-supplied (1,0) fields whose
/// components depend on the tangent coordinates only.
class Normalization {
 public:
  enum class Mode { riemannian, coordinate, explicit_frame };

  static Normalization riemannian(MetricField g);
  static Normalization coordinate();
  static Normalization explicit_frame(std::vector<TensorField> fields);

  Mode mode() const { return mode_; }
  bool is_riemannian() const { return mode_ == Mode::riemannian; }

  /// The metric backing a Riemannian normalization.
  const MetricField& metric() const;

  /// The a-th normal frame vector, extended off N constantly in x, as a
  /// differentiable (1,0) field.
  TensorField frame_field(const SliceChart& chart, int a) const;

  /// Normal frame vectors at an on-N point; columns are chart components.
  Eigen::MatrixXd normal_frame(const SliceChart& chart, const Point& pt) const;

  /// Full basis at a point: normal frame columns first, then the tangent
  /// coordinate vectors.
  Eigen::MatrixXd full_frame(const SliceChart& chart, const Point& pt) const;

  /// Rows are the dual coframe covectors of full_frame (frame^{-1}).
  Eigen::MatrixXd coframe(const SliceChart& chart, const Point& pt) const;

 private:
  Normalization() = default;
  Mode mode_ = Mode::coordinate;
  std::optional<MetricField> g_;
  std::vector<TensorField> frames_;
};

/// g-orthonormal frame of the normal space at arbitrary dual coordinates
/// (not pinned to the slice); rows are frame vectors. Shared by the
/// Riemannian normalization and catalog field constructions.
DualMatrix riemannian_frame_dual(const MetricField& g, const SliceChart& chart,
                                 std::span<const Dual> x);

/// Extends a field given along N (components depending on y only) constantly
/// in the normal coordinates.
TensorField extend_along_normal(const SliceChart& chart, const TensorField& f);

/// Normal-frame components of beta(dy^u, dy^v) at an on-N point.
struct SecondFundamentalFormValue {
  int normal_dim = 0, sub_dim = 0;
  std::vector<double> v;  // layout (a, u, v)

  SecondFundamentalFormValue(int k, int n)
      : normal_dim(k), sub_dim(n), v(static_cast<size_t>(k) * n * n, 0.0) {}
  double& at(int a, int u, int w) {
    return v[(static_cast<size_t>(a) * sub_dim + u) * sub_dim + w];
  }
  double at(int a, int u, int w) const {
    return v[(static_cast<size_t>(a) * sub_dim + u) * sub_dim + w];
  }
  double max_abs() const;
};

SecondFundamentalFormValue second_fundamental_form(const MetricField& g, const SliceChart& chart,
                                                   const Normalization& norm, const Point& pt);

/// Decomposition of nabla_{dy^u} X for a normal frame vector X = frame a:
/// tangent part -W_X(dy^u), normal part D_{dy^u}X.
struct WeingartenValue {
  Eigen::VectorXd weingarten;         // n components of W_X(dy^u) in the dy basis
  Eigen::VectorXd normal_connection;  // k components in the normal frame
};

WeingartenValue weingarten_decompose(const MetricField& g, const SliceChart& chart,
                                     const Normalization& norm, int frame_index, int u,
                                     const Point& pt);

Eigen::MatrixXd induced_metric(const MetricField& g, const SliceChart& chart, const Point& pt);

/// A perturbed extension X' = f X + sum_k l_k Z_k with f == 1 on N and every
/// l_k constructed as x^a * smooth (so it vanishes on N exactly).
struct ExtensionPerturbation {
  ScalarFieldExpr f = ScalarFieldExpr(1.0);
  std::vector<std::pair<ScalarFieldExpr, TensorField>> terms;  // (l_k, Z_k)
};

TensorField perturbed_extension(const TensorField& base, const ExtensionPerturbation& pert);

ExtensionPerturbation random_perturbation(const SliceChart& chart, std::mt19937_64& rng);

/// Deterministic uniform double in [lo, hi) independent of the standard
/// library's distribution implementation.
double uniform_draw(std::mt19937_64& rng, double lo, double hi);

}  // namespace sold
