#pragma once

#include <optional>
#include <string>

#include "sold/soldering.hpp"

namespace sold {

/// Curved submanifolds of flat ambients are realized as graph charts: an
/// explicit embedding of the chart box into the ambient space, with the
/// ambient metric and complex structure pulled back through it. The Jacobian
/// entries are supplied in closed form so that all pullbacks stay first-order
/// differentiable expressions.
struct ChartEmbedding {
  int dim = 0;
  std::vector<ScalarFieldExpr> map;  // dim entries: ambient coords of a chart point
  std::vector<ScalarFieldExpr> jac;  // dim*dim entries, row-major (ambient row, chart col)

  const ScalarFieldExpr& jac_at(int r, int c) const { return jac[static_cast<size_t>(r) * dim + c]; }
};

MetricField pullback_flat_metric(const ChartEmbedding& emb);
TensorField pullback_constant_j(const ChartEmbedding& emb, const std::vector<double>& j0);

struct ExpectedFlags {
  bool totally_geodesic = false;
  bool soldered_g = false;
  std::optional<bool> j_invariant;
  std::optional<bool> domega_zero;
  std::optional<bool> soldered_j;
};

/// An auxiliary adapted (1,1) test field; sign is +1 for g-symmetric, -1 for
/// g-skew-symmetric.
struct AuxField {
  std::string name;
  TensorField field;
  int sign = 1;
};

struct GeometryBundle {
  std::string id;
  std::string description;
  SliceChart chart;
  MetricField g;
  Normalization norm;  // Riemannian normalization of g
  std::optional<TensorField> J;
  std::vector<AuxField> aux;
  ExpectedFlags flags;
  /// True when the Riemannian normal frame coincides with {d/dx^a} on N, so
  /// the coordinate-partial soldering criterion applies directly.
  bool coordinate_normal_ok = false;
};

/// Stable geometry ids, sorted.
std::vector<std::string> geometry_ids();

/// Returns the bundle; builds and self-validates it on first access (almost
/// Hermitian compatibility and the declared nontriviality floors). Unknown
/// ids and failed validation throw.
const GeometryBundle& get_geometry(const std::string& id);

}  // namespace sold
