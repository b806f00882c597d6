#include "sold/soldering.hpp"

#include <cmath>

namespace sold {

namespace {

size_t pow_int(int base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
  return r;
}

// Chart-component matrix of a (1,1) field at a point: M(r,c) = A^r_c.
Eigen::MatrixXd matrix_1_1(const TensorField& a, const Point& pt) {
  const int m = a.dim();
  TensorValue val = a.eval(pt);
  Eigen::MatrixXd mat(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) mat(r, c) = val.at({c, r});
  return mat;
}

void require_valence_1_1(const TensorField& a, const char* who) {
  if (a.contravariant_rank() != 1 || a.covariant_rank() != 1)
    throw std::invalid_argument(std::string(who) + ": field must have valence (1,1)");
}

void require_riemannian(const Normalization& norm, const char* who) {
  if (!norm.is_riemannian())
    throw std::invalid_argument(std::string(who) + ": requires Riemannian normalization");
}

void gate_adapted(const TensorField& a, const SliceChart& chart, const Normalization& norm,
                  const Point& pt, const char* who) {
  AdaptednessReport rep = check_adapted(a, chart, norm, pt);
  if (!rep.pass(kAdaptedTol))
    throw AdaptednessError(std::string(who) + ": field is not algebraically adapted (violation " +
                           std::to_string(rep.overall()) + ")");
}

void check_g_symmetry(const TensorField& a, int sign, const MetricField& g, const Point& pt,
                      const char* who) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  Eigen::MatrixXd A = matrix_1_1(a, pt);
  Eigen::MatrixXd G = g.matrix(pt);
  double r = (G * A - sign * A.transpose() * G).cwiseAbs().maxCoeff();
  if (r > 1e-10)
    throw std::invalid_argument(std::string(who) + ": field does not satisfy the declared " +
                                (sign > 0 ? "g-symmetry" : "g-skew-symmetry"));
}

// beta contracted with A on one tangent slot: beta(A Y_u, Y_v) (first = true)
// or beta(Y_u, A Y_v). Uses the tangent block of A's chart components.
SecondFundamentalFormValue beta_with_a(const SecondFundamentalFormValue& beta,
                                       const Eigen::MatrixXd& a_mat, int k, bool first) {
  const int n = beta.sub_dim;
  SecondFundamentalFormValue out(beta.normal_dim, n);
  for (int b = 0; b < beta.normal_dim; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (int w = 0; w < n; ++w)
          s += first ? a_mat(k + w, k + u) * beta.at(b, w, v)
                     : a_mat(k + w, k + v) * beta.at(b, u, w);
        out.at(b, u, v) = s;
      }
  return out;
}

}  // namespace

ObstructionValue::ObstructionValue(int n_, int p_, int q_)
    : n(n_), p(p_), q(q_), v(pow_int(n_, p_ + q_), 0.0) {}

size_t ObstructionValue::flat(std::span<const int> idx) const {
  size_t f = 0;
  for (int i : idx) f = f * static_cast<size_t>(n) + static_cast<size_t>(i);
  return f;
}

double ObstructionValue::max_abs() const {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

double SolderingFormValue::max_abs() const {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

AdaptednessReport check_adapted(const TensorField& a, const SliceChart& chart,
                                const Normalization& norm, const Point& pt) {
  require_on_submanifold(chart, pt);
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  const int p = a.contravariant_rank();
  const int q = a.covariant_rank();

  TensorValue val = a.eval(pt);
  Eigen::MatrixXd frame = norm.full_frame(chart, pt);
  Eigen::MatrixXd coframe = norm.coframe(chart, pt);

  // Components of A in the (normal frame, tangent frame) basis:
  // covariant slots contract with frame columns, contravariant with coframe rows.
  AdaptednessReport rep;
  std::vector<int> inner(q + p);
  for_each_index(m, q + p, [&](std::span<const int> fidx) {
    int cov_normal = 0, contra_normal = 0;
    for (int i = 0; i < q; ++i) cov_normal += fidx[i] < k;
    for (int j = 0; j < p; ++j) contra_normal += fidx[q + j] < k;
    const bool mixed1 = cov_normal == 1 && contra_normal == 0;
    const bool mixed2 = cov_normal == 0 && contra_normal == 1;
    if (!mixed1 && !mixed2) return;

    double s = 0.0;
    for_each_index(m, q + p, [&](std::span<const int> cidx) {
      double term = val.at(cidx);
      for (int i = 0; i < q; ++i) term *= frame(cidx[i], fidx[i]);
      for (int j = 0; j < p; ++j) term *= coframe(fidx[q + j], cidx[q + j]);
      s += term;
    });
    double& slot = mixed1 ? rep.cond1 : rep.cond2;
    slot = std::max(slot, std::abs(s));
  });
  return rep;
}

ObstructionValue obstruction_with_extension(const TensorField& a, const SliceChart& chart,
                                            const Normalization& norm,
                                            const TensorField& extension, const Point& pt) {
  require_on_submanifold(chart, pt);
  const int m = chart.ambient_dim;
  const int n = chart.sub_dim;
  const int k = chart.normal_dim();
  const int p = a.contravariant_rank();
  const int q = a.covariant_rank();

  TensorValue lie = lie_derivative(extension, a, pt);
  Eigen::MatrixXd coframe = norm.coframe(chart, pt);

  ObstructionValue out(n, p, q);
  std::vector<int> cidx(q + p);
  for_each_index(n, q + p, [&](std::span<const int> tidx) {
    // covariant slots take the tangent coordinate vectors directly
    for (int i = 0; i < q; ++i) cidx[i] = k + tidx[i];
    double s = 0.0;
    if (p == 0) {
      s = lie.at(cidx);
    } else {
      // contravariant slots contract with the tangent coframe (ann of nu N)
      std::vector<int> jidx(p, 0);
      while (true) {
        for (int j = 0; j < p; ++j) cidx[q + j] = jidx[j];
        double term = lie.at(cidx);
        for (int j = 0; j < p; ++j) term *= coframe(k + tidx[q + j], jidx[j]);
        s += term;
        int t = p - 1;
        while (t >= 0 && ++jidx[t] == m) jidx[t--] = 0;
        if (t < 0) break;
      }
    }
    out.at(tidx) = s;
  });
  return out;
}

ObstructionValue soldering_obstruction(const TensorField& a, const SliceChart& chart,
                                       const Normalization& norm, int frame_index,
                                       const Point& pt) {
  gate_adapted(a, chart, norm, pt, "soldering_obstruction");
  return obstruction_with_extension(a, chart, norm, norm.frame_field(chart, frame_index), pt);
}

double extension_independence_residual(const TensorField& a, const SliceChart& chart,
                                       const Normalization& norm, int frame_index,
                                       const Point& pt, const ExtensionPerturbation& pert) {
  TensorField base = norm.frame_field(chart, frame_index);
  ObstructionValue w0 = obstruction_with_extension(a, chart, norm, base, pt);
  ObstructionValue w1 =
      obstruction_with_extension(a, chart, norm, perturbed_extension(base, pert), pt);
  double r = 0.0;
  for (size_t i = 0; i < w0.v.size(); ++i) r = std::max(r, std::abs(w0.v[i] - w1.v[i]));
  return r;
}

SolderVerdict is_soldered(const TensorField& a, const SliceChart& chart,
                          const Normalization& norm, double tol, int samples, uint64_t seed) {
  SolderVerdict verdict;
  verdict.adapted = true;
  const int k = chart.normal_dim();
  for (const Point& pt : sample_on_submanifold(chart, samples, seed)) {
    AdaptednessReport rep = check_adapted(a, chart, norm, pt);
    verdict.max_adapt_violation = std::max(verdict.max_adapt_violation, rep.overall());
    if (!rep.pass(kAdaptedTol)) {
      verdict.adapted = false;
      continue;  // not adapted => not soldered; obstruction would be ill-defined
    }
    for (int b = 0; b < k; ++b) {
      ObstructionValue w =
          obstruction_with_extension(a, chart, norm, norm.frame_field(chart, b), pt);
      verdict.max_obstruction = std::max(verdict.max_obstruction, w.max_abs());
    }
  }
  verdict.soldered = verdict.adapted && verdict.max_obstruction <= tol;
  return verdict;
}

SolderingFormValue soldering_form(const TensorField& a, const SliceChart& chart,
                                  const Normalization& norm, const Point& pt) {
  require_valence_1_1(a, "soldering_form");
  require_riemannian(norm, "soldering_form");
  gate_adapted(a, chart, norm, pt, "soldering_form");
  const MetricField& g = norm.metric();
  const int m = chart.ambient_dim;
  const int n = chart.sub_dim;
  const int k = chart.normal_dim();

  Eigen::MatrixXd G = g.matrix(pt);
  Eigen::MatrixXd frame = norm.normal_frame(chart, pt);
  // flat of a tangent coordinate vector must annihilate nu N here.
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < k; ++b) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += G(j, k + v) * frame(j, b);
      if (std::abs(s) > 1e-10)
        throw std::runtime_error("soldering_form: flat of tangent vector leaks into nu N");
    }

  // The normal frame is g-orthonormal, so the components of sigma_A against it
  // are exactly the inner products of the defining relation; no linear solve.
  SolderingFormValue sigma(k, n);
  for (int b = 0; b < k; ++b) {
    TensorValue lie = lie_derivative(norm.frame_field(chart, b), a, pt);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += lie.at({k + u, j}) * G(j, k + v);
        sigma.at(b, u, v) = s;
      }
  }
  return sigma;
}

double residual_metric_obstruction(const MetricField& g, const SliceChart& chart,
                                   const Normalization& norm, const Point& pt) {
  require_riemannian(norm, "residual_metric_obstruction");
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
  double r = 0.0;
  for (int b = 0; b < k; ++b) {
    ObstructionValue w = soldering_obstruction(g.tensor(), chart, norm, b, pt);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        int idx[2] = {u, v};
        r = std::max(r, std::abs(w.at(std::span<const int>(idx, 2)) + 2.0 * beta.at(b, u, v)));
      }
  }
  return r;
}

double residual_symmetry(const TensorField& a, int sign, const MetricField& g,
                         const SliceChart& chart, const Normalization& norm, const Point& pt) {
  require_valence_1_1(a, "residual_symmetry");
  require_riemannian(norm, "residual_symmetry");
  check_g_symmetry(a, sign, g, pt, "residual_symmetry");

  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SolderingFormValue sigma = soldering_form(a, chart, norm, pt);
  SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
  Eigen::MatrixXd A = matrix_1_1(a, pt);
  SecondFundamentalFormValue ba1 = beta_with_a(beta, A, k, true);
  SecondFundamentalFormValue ba2 = beta_with_a(beta, A, k, false);

  double r = 0.0;
  for (int b = 0; b < k; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double lhs = sigma.at(b, u, v) - sign * sigma.at(b, v, u);
        double rhs = 2.0 * (ba1.at(b, u, v) - sign * ba2.at(b, u, v));
        r = std::max(r, std::abs(lhs - rhs));
      }
  return r;
}

double residual_connection_formula(const TensorField& a, int sign, const MetricField& g,
                                   const SliceChart& chart, const Normalization& norm,
                                   const Point& pt) {
  require_valence_1_1(a, "residual_connection_formula");
  require_riemannian(norm, "residual_connection_formula");
  check_g_symmetry(a, sign, g, pt, "residual_connection_formula");
  gate_adapted(a, chart, norm, pt, "residual_connection_formula");

  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SolderingFormValue sigma = soldering_form(a, chart, norm, pt);  // Lie path
  SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
  Eigen::MatrixXd A = matrix_1_1(a, pt);
  SecondFundamentalFormValue ba1 = beta_with_a(beta, A, k, true);
  SecondFundamentalFormValue ba2 = beta_with_a(beta, A, k, false);
  TensorValue nabla = covariant_derivative(a, g, pt);  // layout (i, u, j) -> (nabla_i A)^j_u
  Eigen::MatrixXd G = g.matrix(pt);
  Eigen::MatrixXd frame = norm.normal_frame(chart, pt);

  double r = 0.0;
  for (int b = 0; b < k; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double nab = 0.0;  // g((nabla_X A)(Y_u), Y_v)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            nab += frame(i, b) * nabla.at({i, k + u, j}) * G(j, k + v);
        double rhs = nab + ba1.at(b, u, v) - sign * ba2.at(b, u, v);
        r = std::max(r, std::abs(sigma.at(b, u, v) - rhs));
      }
  return r;
}

ParallelCorollaryReport check_parallel_corollary(const TensorField& a, int sign,
                                                 const MetricField& g, const SliceChart& chart,
                                                 const Normalization& norm, const Point& pt,
                                                 double parallel_tol) {
  require_valence_1_1(a, "check_parallel_corollary");
  require_riemannian(norm, "check_parallel_corollary");
  check_g_symmetry(a, sign, g, pt, "check_parallel_corollary");

  ParallelCorollaryReport rep;
  rep.nabla_a_max = covariant_derivative(a, g, pt).max_abs();
  if (rep.nabla_a_max > parallel_tol) return rep;  // corollary not applicable
  rep.applicable = true;

  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SolderingFormValue sigma = soldering_form(a, chart, norm, pt);
  if (sign > 0) {
    rep.residual = sigma.max_abs();
    return rep;
  }
  SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
  SecondFundamentalFormValue ba1 = beta_with_a(beta, matrix_1_1(a, pt), k, true);
  for (int b = 0; b < k; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        rep.residual = std::max(rep.residual,
                                std::abs(sigma.at(b, u, v) - 2.0 * ba1.at(b, u, v)));
  return rep;
}

double residual_nijenhuis(const TensorField& a, int sign, const MetricField& g,
                          const SliceChart& chart, const Normalization& norm, const Point& pt) {
  require_valence_1_1(a, "residual_nijenhuis");
  require_riemannian(norm, "residual_nijenhuis");
  check_g_symmetry(a, sign, g, pt, "residual_nijenhuis");
  gate_adapted(a, chart, norm, pt, "residual_nijenhuis");

  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SolderingFormValue sigma = soldering_form(a, chart, norm, pt);
  TensorValue nij = nijenhuis(a, pt);
  Eigen::MatrixXd A = matrix_1_1(a, pt);
  Eigen::MatrixXd G = g.matrix(pt);
  Eigen::MatrixXd frame = norm.normal_frame(chart, pt);
  // g(X_a, A X_b); A X_b is normal by adaptedness.
  Eigen::MatrixXd pairing = frame.transpose() * G * A * frame;

  double r = 0.0;
  for (int b = 0; b < k; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double lhs = 0.0;  // g(sigma(Y_u,Y_v), A X_b)
        for (int c = 0; c < k; ++c) lhs += sigma.at(c, u, v) * pairing(c, b);
        double shifted = 0.0;  // g(sigma(Y_u, A Y_v), X_b)
        for (int w = 0; w < n; ++w) shifted += A(k + w, k + v) * sigma.at(b, u, w);
        double nterm = 0.0;  // g(N_A(X_b, Y_u), Y_v)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            nterm += frame(i, b) * nij.at({i, k + u, j}) * G(j, k + v);
        r = std::max(r, std::abs(lhs - sign * shifted - nterm));
      }
  return r;
}

double residual_kahler_identity(const MetricField& g, const TensorField& j,
                                const SliceChart& chart, const Normalization& norm,
                                const Point& pt) {
  require_valence_1_1(j, "residual_kahler_identity");
  require_riemannian(norm, "residual_kahler_identity");
  AdaptednessReport rep = check_adapted(j, chart, norm, pt);
  if (!rep.pass(kAdaptedTol))
    throw AdaptednessError("residual_kahler_identity: N is not J-invariant");

  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  SolderingFormValue sigma = soldering_form(j, chart, norm, pt);
  SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
  SecondFundamentalFormValue bj1 = beta_with_a(beta, matrix_1_1(j, pt), k, true);
  TensorValue domega = exterior_derivative_2form(kahler_form(g, j), pt);
  Eigen::MatrixXd frame = norm.normal_frame(chart, pt);

  double r = 0.0;
  for (int b = 0; b < k; ++b)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double dw = 0.0;  // dOmega(X_b, Y_u, Y_v)
        for (int i = 0; i < m; ++i) dw += frame(i, b) * domega.at({i, k + u, k + v});
        r = std::max(r, std::abs(sigma.at(b, u, v) - 2.0 * bj1.at(b, u, v) - dw));
      }
  return r;
}

ClosedStructureReport classify_closed_structure(const MetricField& g, const TensorField& j, const SliceChart& chart,
                             const Normalization& norm, double tol, int samples, uint64_t seed) {
  require_valence_1_1(j, "classify_closed_structure");
  require_riemannian(norm, "classify_closed_structure");
  constexpr double kFlagTol = 1e-8;
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;

  ClosedStructureReport rep;
  TensorField omega = kahler_form(g, j);
  std::vector<Point> pts = sample_on_submanifold(chart, samples, seed);
  for (const Point& pt : pts) {
    rep.max_adapt_violation =
        std::max(rep.max_adapt_violation, check_adapted(j, chart, norm, pt).overall());
    rep.max_beta = std::max(rep.max_beta,
                            second_fundamental_form(g, chart, norm, pt).max_abs());
    rep.max_domega = std::max(rep.max_domega, exterior_derivative_2form(omega, pt).max_abs());
  }
  rep.j_invariant = rep.max_adapt_violation <= kFlagTol;
  rep.totally_geodesic = rep.max_beta <= kFlagTol;
  rep.domega_zero = rep.max_domega <= kFlagTol;

  SolderVerdict verdict = is_soldered(j, chart, norm, tol, samples, seed);
  rep.soldered_j = verdict.soldered;
  rep.max_obstruction = verdict.max_obstruction;

  if (rep.j_invariant) {
    for (const Point& pt : pts) {
      SecondFundamentalFormValue beta = second_fundamental_form(g, chart, norm, pt);
      SecondFundamentalFormValue bj1 = beta_with_a(beta, matrix_1_1(j, pt), k, true);
      TensorValue domega = exterior_derivative_2form(omega, pt);
      Eigen::MatrixXd frame = norm.normal_frame(chart, pt);
      for (int b = 0; b < k; ++b)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            double dw = 0.0;
            for (int i = 0; i < m; ++i) dw += frame(i, b) * domega.at({i, k + u, k + v});
            rep.shape_2form_residual =
                std::max(rep.shape_2form_residual, std::abs(bj1.at(b, u, v) + 0.5 * dw));
          }
    }
    rep.shape_2form_consistent = rep.soldered_j == (rep.shape_2form_residual <= tol);
  }

  rep.equivalence_applicable = rep.domega_zero;
  if (rep.equivalence_applicable)
    rep.equivalence_holds = rep.soldered_j == (rep.j_invariant && rep.totally_geodesic);
  return rep;
}

LocalCriterionValue residual_local_criterion(const TensorField& a, const SliceChart& chart,
                                             const Point& pt) {
  require_on_submanifold(chart, pt);
  const Normalization norm = Normalization::coordinate();
  gate_adapted(a, chart, norm, pt, "residual_local_criterion");
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  const int p = a.contravariant_rank();
  const int q = a.covariant_rank();
  TensorJet jet = a.jet(pt);

  LocalCriterionValue out;
  std::vector<int> cidx(q + p);
  for (int b = 0; b < k; ++b) {
    ObstructionValue w =
        obstruction_with_extension(a, chart, norm, norm.frame_field(chart, b), pt);
    for_each_index(n, q + p, [&](std::span<const int> tidx) {
      for (int i = 0; i < q + p; ++i) cidx[i] = k + tidx[i];
      const double partial = jet.partial[b].at(cidx);
      const double lie = w.at(tidx);
      out.lie_path_max = std::max(out.lie_path_max, std::abs(lie));
      out.partial_path_max = std::max(out.partial_path_max, std::abs(partial));
      out.discrepancy = std::max(out.discrepancy, std::abs(lie - partial));
    });
  }
  return out;
}

}  // namespace sold
