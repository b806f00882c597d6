#pragma once

#include "sold/sampling.hpp"

namespace sold {

/// Thrown when an operation that is only well defined for algebraically
/// adapted fields is asked to run on a non-adapted one. The obstruction of a
/// non-adapted field would depend on the chosen extension, so the engine
/// refuses to report it.
class AdaptednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdaptednessReport {
  double cond1 = 0.0;  // max violation over covariant slots (the alpha_i test)
  double cond2 = 0.0;  // max violation over contravariant slots (the Z_j test)

  double overall() const { return cond1 > cond2 ? cond1 : cond2; }
  bool pass(double tol) const { return overall() <= tol; }
};

/// Default gate below which a field counts as algebraically adapted.
constexpr double kAdaptedTol = 1e-8;

/// w_A(X) evaluated on the tangent frame and tangent coframe; indices run
/// over the n tangent directions, covariant slots first.
struct ObstructionValue {
  int n = 0, p = 0, q = 0;
  std::vector<double> v;

  ObstructionValue(int n_, int p_, int q_);
  size_t flat(std::span<const int> idx) const;
  double& at(std::span<const int> idx) { return v[flat(idx)]; }
  double at(std::span<const int> idx) const { return v[flat(idx)]; }
  double max_abs() const;
};

/// sigma_A components against the g-orthonormal normal frame; layout (a,u,v).
struct SolderingFormValue {
  int normal_dim = 0, sub_dim = 0;
  std::vector<double> v;

  SolderingFormValue(int k, int n)
      : normal_dim(k), sub_dim(n), v(static_cast<size_t>(k) * n * n, 0.0) {}
  double& at(int a, int u, int w) {
    return v[(static_cast<size_t>(a) * sub_dim + u) * sub_dim + w];
  }
  double at(int a, int u, int w) const {
    return v[(static_cast<size_t>(a) * sub_dim + u) * sub_dim + w];
  }
  double max_abs() const;
};

/// Expresses A in the (normal frame, tangent frame) basis at an on-N point and
/// measures the mixed components that must vanish for algebraic adaptedness.
AdaptednessReport check_adapted(const TensorField& a, const SliceChart& chart,
                                const Normalization& norm, const Point& pt);

/// L_X A restricted to tangent arguments, with X the extension of the given
/// normal frame vector. Refuses non-adapted fields.
ObstructionValue soldering_obstruction(const TensorField& a, const SliceChart& chart,
                                       const Normalization& norm, int frame_index,
                                       const Point& pt);

/// Same contraction through an arbitrary extension field; not gated. Used for
/// extension-independence sweeps and negative controls.
ObstructionValue obstruction_with_extension(const TensorField& a, const SliceChart& chart,
                                            const Normalization& norm,
                                            const TensorField& extension, const Point& pt);

double extension_independence_residual(const TensorField& a, const SliceChart& chart,
                                       const Normalization& norm, int frame_index,
                                       const Point& pt, const ExtensionPerturbation& pert);

struct SolderVerdict {
  bool adapted = false;
  bool soldered = false;
  double max_adapt_violation = 0.0;
  double max_obstruction = 0.0;
};

SolderVerdict is_soldered(const TensorField& a, const SliceChart& chart,
                          const Normalization& norm, double tol, int samples, uint64_t seed);

/// Solves the defining relation g(sigma_A(Y1,Y2), X) = w_A(X)(Y1, flat Y2)
/// against the orthonormal normal frame. (1,1) fields, Riemannian
/// normalization only.
SolderingFormValue soldering_form(const TensorField& a, const SliceChart& chart,
                                  const Normalization& norm, const Point& pt);

/// Residual of w_g(X)(Y1,Y2) = -2 g(beta(Y1,Y2), X), the two sides through
/// the Lie-derivative and Christoffel paths respectively.
double residual_metric_obstruction(const MetricField& g, const SliceChart& chart,
                                   const Normalization& norm, const Point& pt);

/// Residual of the (skew-)symmetry transfer between sigma_A and beta;
/// sign = +1 for g-symmetric A, -1 for g-skew-symmetric A.
double residual_symmetry(const TensorField& a, int sign, const MetricField& g,
                         const SliceChart& chart, const Normalization& norm, const Point& pt);

/// Residual of the connection formula expressing sigma_A through nabla A and
/// beta; left side from the Lie path, right side from the covariant path.
double residual_connection_formula(const TensorField& a, int sign, const MetricField& g,
                                   const SliceChart& chart, const Normalization& norm,
                                   const Point& pt);

struct ParallelCorollaryReport {
  bool applicable = false;      // nabla A = 0 at the point
  double nabla_a_max = 0.0;
  double residual = 0.0;
};

ParallelCorollaryReport check_parallel_corollary(const TensorField& a, int sign,
                                                 const MetricField& g, const SliceChart& chart,
                                                 const Normalization& norm, const Point& pt,
                                                 double parallel_tol = 1e-9);

/// Residual of the Nijenhuis identity linking sigma_A(., .) against A-shifted
/// arguments and the tangential part of N_A.
double residual_nijenhuis(const TensorField& a, int sign, const MetricField& g,
                          const SliceChart& chart, const Normalization& norm, const Point& pt);

/// Residual of the Kahler-form identity; d(Omega) through the exterior
/// derivative path, independent of the Lie path behind sigma_J.
double residual_kahler_identity(const MetricField& g, const TensorField& j,
                                const SliceChart& chart, const Normalization& norm,
                                const Point& pt);

struct ClosedStructureReport {
  bool j_invariant = false;
  bool totally_geodesic = false;
  bool domega_zero = false;
  bool soldered_j = false;
  double max_adapt_violation = 0.0;
  double max_beta = 0.0;
  double max_domega = 0.0;
  double max_obstruction = 0.0;
  double shape_2form_residual = 0.0;       // |g(beta(JY1,Y2),X) + 1/2 dOmega(X,Y1,Y2)|
  bool shape_2form_consistent = false;     // soldered_j  <=>  shape_2form_residual small
  bool equivalence_applicable = false;  // dOmega == 0 at all samples
  bool equivalence_holds = false;    // soldered_j <=> (invariant && tot. geodesic)
};

ClosedStructureReport classify_closed_structure(const MetricField& g, const TensorField& j, const SliceChart& chart,
                             const Normalization& norm, double tol, int samples, uint64_t seed);

struct LocalCriterionValue {
  double lie_path_max = 0.0;      // max |w_A| through the Lie-derivative path
  double partial_path_max = 0.0;  // max |d A / d x^a| over tangent components
  double discrepancy = 0.0;       // componentwise disagreement of the two paths
};

/// Coordinate-normalization equivalence of the Lie-derivative criterion and
/// the raw normal partials of the tangent components.
LocalCriterionValue residual_local_criterion(const TensorField& a, const SliceChart& chart,
                                             const Point& pt);

}  // namespace sold
