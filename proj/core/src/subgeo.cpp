#include "sold/subgeo.hpp"

#include <stdexcept>

#include "sold/linalg_dual.hpp"

namespace sold {

DualMatrix riemannian_frame_dual(const MetricField& g, const SliceChart& chart,
                                 std::span<const Dual> x) {
  const int m = chart.ambient_dim;
  const int n = chart.sub_dim;
  const int k = chart.normal_dim();
  std::vector<Dual> gm = g.matrix_dual(x);
  auto G = [&](int i, int j) -> const Dual& { return gm[static_cast<size_t>(i) * m + j]; };

  // Project each d/dx^a off the tangent span: solve G'_{uv} c^v = G_{k+u, a}.
  DualMatrix gprime(n, n), rhs(n, k);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) gprime.at(u, v) = G(k + u, k + v);
    for (int a = 0; a < k; ++a) rhs.at(u, a) = G(k + u, a);
  }
  DualMatrix coeff = dual_solve(gprime, rhs);

  DualMatrix frame(k, m);  // rows are frame vectors
  for (int a = 0; a < k; ++a) {
    frame.at(a, a) = Dual(1.0);
    for (int v = 0; v < n; ++v) frame.at(a, k + v) = -coeff.at(v, a);
  }

  auto inner = [&](int ra, int rb) {
    Dual s(0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s = s + frame.at(ra, i) * G(i, j) * frame.at(rb, j);
    return s;
  };

  // Gram-Schmidt in index order; deterministic frame orientation.
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < a; ++b) {
      Dual proj = inner(a, b);
      for (int i = 0; i < m; ++i) frame.at(a, i) = frame.at(a, i) - proj * frame.at(b, i);
    }
    Dual nrm2 = inner(a, a);
    if (nrm2.val < 1e-16)
      throw std::runtime_error("riemannian_frame: projection rank deficiency");
    Dual inv = 1.0 / sqrt(nrm2);
    for (int i = 0; i < m; ++i) frame.at(a, i) = frame.at(a, i) * inv;
  }
  return frame;
}

const MetricField& Normalization::metric() const {
  if (!g_) throw std::logic_error("Normalization::metric: not a Riemannian normalization");
  return *g_;
}

Normalization Normalization::riemannian(MetricField g) {
  Normalization n;
  n.mode_ = Mode::riemannian;
  n.g_ = std::move(g);
  return n;
}

Normalization Normalization::coordinate() {
  Normalization n;
  n.mode_ = Mode::coordinate;
  return n;
}

Normalization Normalization::explicit_frame(std::vector<TensorField> fields) {
  if (fields.empty()) throw std::invalid_argument("explicit_frame: no fields given");
  Normalization n;
  n.mode_ = Mode::explicit_frame;
  n.frames_ = std::move(fields);
  return n;
}

TensorField Normalization::frame_field(const SliceChart& chart, int a) const {
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  if (a < 0 || a >= k) throw std::invalid_argument("frame_field: normal index out of range");

  TensorField out(m, 1, 0);
  switch (mode_) {
    case Mode::coordinate:
      out.component({a}) = ScalarFieldExpr(1.0);
      break;
    case Mode::explicit_frame:
      if (static_cast<int>(frames_.size()) != k)
        throw std::invalid_argument("explicit_frame: need one field per normal index");
      return extend_along_normal(chart, frames_[a]);
    case Mode::riemannian: {
      const MetricField g = *g_;
      for (int i = 0; i < m; ++i) {
        out.component({i}) = ScalarFieldExpr([g, chart, a, i, k](std::span<const Dual> x) {
          std::vector<Dual> pinned(x.begin(), x.end());
          for (int b = 0; b < k; ++b) pinned[b] = Dual(0.0);
          DualMatrix frame = riemannian_frame_dual(g, chart, pinned);
          return frame.at(a, i);
        });
      }
      break;
    }
  }
  return out;
}

Eigen::MatrixXd Normalization::normal_frame(const SliceChart& chart, const Point& pt) const {
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  Eigen::MatrixXd f(m, k);
  for (int a = 0; a < k; ++a) {
    TensorValue val = frame_field(chart, a).eval(pt);
    for (int i = 0; i < m; ++i) f(i, a) = val.at({i});
  }
  return f;
}

Eigen::MatrixXd Normalization::full_frame(const SliceChart& chart, const Point& pt) const {
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  f.leftCols(k) = normal_frame(chart, pt);
  for (int u = 0; u < chart.sub_dim; ++u) f(k + u, k + u) = 1.0;
  return f;
}

Eigen::MatrixXd Normalization::coframe(const SliceChart& chart, const Point& pt) const {
  Eigen::MatrixXd f = full_frame(chart, pt);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
  const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!(cond < 1e8))
    throw std::runtime_error("normalization frame is numerically degenerate");
  return f.inverse();
}

TensorField extend_along_normal(const SliceChart& chart, const TensorField& f) {
  TensorField out(f.dim(), f.contravariant_rank(), f.covariant_rank(), f.symmetry());
  const int k = chart.normal_dim();
  for_each_index(f.dim(), f.rank(), [&](std::span<const int> idx) {
    out.component(idx) = pin_normal_coords(f.component(idx), k);
  });
  return out;
}

double SecondFundamentalFormValue::max_abs() const {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

SecondFundamentalFormValue second_fundamental_form(const MetricField& g, const SliceChart& chart,
                                                   const Normalization& norm, const Point& pt) {
  require_on_submanifold(chart, pt);
  if (!norm.is_riemannian())
    throw std::invalid_argument("second_fundamental_form: requires Riemannian normalization");
  const int m = chart.ambient_dim;
  const int n = chart.sub_dim;
  const int k = chart.normal_dim();
  ChristoffelValue gamma = christoffels(g, pt);
  Eigen::MatrixXd G = g.matrix(pt);
  Eigen::MatrixXd frame = norm.normal_frame(chart, pt);

  // beta^a_{uv} = g(nabla_{dy^u} dy^v, X_a); the frame is g-orthonormal so the
  // inner product is the projection coefficient.
  SecondFundamentalFormValue beta(k, n);
  for (int a = 0; a < k; ++a)
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w) {
        double s = 0.0;
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c) s += gamma.at(r, k + u, k + w) * G(r, c) * frame(c, a);
        beta.at(a, u, w) = s;
      }
  return beta;
}

WeingartenValue weingarten_decompose(const MetricField& g, const SliceChart& chart,
                                     const Normalization& norm, int frame_index, int u,
                                     const Point& pt) {
  require_on_submanifold(chart, pt);
  const int m = chart.ambient_dim;
  const int n = chart.sub_dim;
  const int k = chart.normal_dim();
  TensorField x_field = norm.frame_field(chart, frame_index);
  TensorJet xj = x_field.jet(pt);
  ChristoffelValue gamma = christoffels(g, pt);

  Eigen::VectorXd deriv(m);  // nabla_{dy^u} X
  for (int r = 0; r < m; ++r) {
    double s = xj.partial[k + u].at({r});
    for (int l = 0; l < m; ++l) s += gamma.at(r, k + u, l) * xj.value.at({l});
    deriv(r) = s;
  }

  Eigen::VectorXd coeff = norm.coframe(chart, pt) * deriv;
  WeingartenValue out;
  out.weingarten = -coeff.tail(n);  // nabla_Y X = -W_X Y + D_Y X
  out.normal_connection = coeff.head(k);
  return out;
}

Eigen::MatrixXd induced_metric(const MetricField& g, const SliceChart& chart, const Point& pt) {
  require_on_submanifold(chart, pt);
  const int k = chart.normal_dim();
  const int n = chart.sub_dim;
  Eigen::MatrixXd G = g.matrix(pt);
  Eigen::MatrixXd gp = G.block(k, k, n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gp, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("induced metric not positive definite");
  return gp;
}

TensorField perturbed_extension(const TensorField& base, const ExtensionPerturbation& pert) {
  const int m = base.dim();
  TensorField out(m, 1, 0);
  for (int i = 0; i < m; ++i) {
    ScalarFieldExpr e = pert.f * base.component({i});
    for (const auto& [l, z] : pert.terms) e = e + l * z.component({i});
    out.component({i}) = e;
  }
  return out;
}

double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

ExtensionPerturbation random_perturbation(const SliceChart& chart, std::mt19937_64& rng) {
  const int m = chart.ambient_dim;
  const int k = chart.normal_dim();
  auto random_linear = [&](double scale) {
    ScalarFieldExpr e(uniform_draw(rng, -scale, scale));
    for (int i = 0; i < m; ++i)
      e = e + ScalarFieldExpr(uniform_draw(rng, -scale, scale)) * ScalarFieldExpr::coord(i);
    return e;
  };

  ExtensionPerturbation pert;
  // f = 1 + x^a * smooth keeps f == 1 on N exactly.
  pert.f = ScalarFieldExpr(1.0) +
           ScalarFieldExpr::coord(static_cast<int>(rng() % k)) * random_linear(0.5);
  const int nterms = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < nterms; ++t) {
    ScalarFieldExpr l = ScalarFieldExpr::coord(static_cast<int>(rng() % k)) * random_linear(0.5);
    TensorField z(m, 1, 0);
    for (int i = 0; i < m; ++i) z.component({i}) = random_linear(1.0);
    pert.terms.emplace_back(std::move(l), std::move(z));
  }
  return pert;
}

}  // namespace sold
