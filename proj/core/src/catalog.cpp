#include "sold/catalog.hpp"

#include <map>
#include <mutex>

#include "sold/linalg_dual.hpp"

namespace sold {

namespace {

ScalarFieldExpr X(int i) { return ScalarFieldExpr::coord(i); }

Box cube(int m, double half) {
  return Box{std::vector<double>(m, -half), std::vector<double>(m, half)};
}

MetricField euclidean_metric(int m) {
  TensorField g(m, 0, 2, Symmetry::symmetric_cov);
  for (int i = 0; i < m; ++i) g.component({i, i}) = ScalarFieldExpr(1.0);
  return MetricField(std::move(g));
}

// Standard complex structure by 2x2 blocks: J e_{2i} = e_{2i+1}.
std::vector<double> standard_j_matrix(int m) {
  std::vector<double> j0(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i + 1 < m; i += 2) {
    j0[static_cast<size_t>(i + 1) * m + i] = 1.0;   // J^{i+1}_i
    j0[static_cast<size_t>(i) * m + (i + 1)] = -1.0;
  }
  return j0;
}

TensorField constant_j_field(int m, const std::vector<double>& j0) {
  // j0 is row-major J^r_c; TensorField layout is (cov c, contra r).
  TensorField j(m, 1, 1);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      j.component({c, r}) = ScalarFieldExpr(j0[static_cast<size_t>(r) * m + c]);
  return j;
}

GeometryBundle make_bundle(std::string id, std::string desc, SliceChart chart, MetricField g) {
  Normalization norm = Normalization::riemannian(g);
  return GeometryBundle{std::move(id), std::move(desc), std::move(chart),
                        std::move(g),  std::move(norm),  std::nullopt,
                        {},            ExpectedFlags{},  false};
}

GeometryBundle make_euclid_slice() {
  SliceChart chart(3, 2, cube(3, 1.0));
  GeometryBundle b = make_bundle("euclid_slice", "flat R^3, N = {x=0} plane (totally geodesic)",
                                 chart, euclidean_metric(3));
  TensorField a(3, 1, 1);
  a.component({0, 0}) = ScalarFieldExpr(1.0) + X(0) * X(0);
  a.component({1, 1}) = ScalarFieldExpr(2.0) + X(1);
  a.component({2, 2}) = ScalarFieldExpr(3.0) + X(1) * X(2);
  b.aux.push_back({"A_sym", std::move(a), +1});
  b.flags.totally_geodesic = true;
  b.flags.soldered_g = true;
  b.coordinate_normal_ok = true;
  return b;
}

GeometryBundle make_polar_circle() {
  Box box{{-0.9, -3.0}, {0.9, 3.0}};
  SliceChart chart(2, 1, box);
  TensorField gt(2, 0, 2, Symmetry::symmetric_cov);
  gt.component({0, 0}) = ScalarFieldExpr(1.0);
  gt.component({1, 1}) = (1.0 + X(0)) * (1.0 + X(0));
  GeometryBundle b = make_bundle("polar_circle",
                                 "R^2 with g = diag(1,(1+x)^2), N = {x=0} circle fiber",
                                 chart, MetricField(std::move(gt)));
  TensorField a(2, 1, 1);
  a.component({0, 0}) = ScalarFieldExpr(1.0) + 0.2 * X(0) + 0.1 * sin(X(1));
  a.component({1, 1}) = ScalarFieldExpr(0.7) + 0.3 * X(0) - 0.05 * X(1) * X(1);
  b.aux.push_back({"A_sym", std::move(a), +1});
  b.flags.totally_geodesic = false;
  b.flags.soldered_g = false;
  b.coordinate_normal_ok = true;
  return b;
}

GeometryBundle make_flat_kahler_line() {
  SliceChart chart(4, 2, cube(4, 1.0));
  GeometryBundle b = make_bundle("flat_kahler_line",
                                 "flat R^4 with the standard J, N = complex line {x^1=x^2=0}",
                                 chart, euclidean_metric(4));
  b.J = constant_j_field(4, standard_j_matrix(4));
  b.flags.totally_geodesic = true;
  b.flags.soldered_g = true;
  b.flags.j_invariant = true;
  b.flags.domega_zero = true;
  b.flags.soldered_j = true;
  b.coordinate_normal_ok = true;
  return b;
}

GeometryBundle make_parabola_complex_curve() {
  // Graph chart of the complex curve w = z^2 in flat C^2: chart coords
  // (x1,x2,y1,y2) map to (z1,z2,w1,w2) = (y1, y2, y1^2-y2^2+x1, 2 y1 y2 + x2).
  Box box{{-0.5, -0.5, -1.2, -1.2}, {0.5, 0.5, 1.2, 1.2}};
  SliceChart chart(4, 2, box);

  ChartEmbedding emb;
  emb.dim = 4;
  emb.map = {X(2), X(3), X(2) * X(2) - X(3) * X(3) + X(0), 2.0 * X(2) * X(3) + X(1)};
  emb.jac = {
      0.0, 0.0, 1.0,          0.0,
      0.0, 0.0, 0.0,          1.0,
      1.0, 0.0, 2.0 * X(2),   -2.0 * X(3),
      0.0, 1.0, 2.0 * X(3),   2.0 * X(2),
  };

  GeometryBundle b = make_bundle("parabola_complex_curve",
                                 "complex curve w = z^2 in flat C^2, pulled back to a graph chart",
                                 chart, pullback_flat_metric(emb));
  b.J = pullback_constant_j(emb, standard_j_matrix(4));
  b.flags.totally_geodesic = false;
  b.flags.soldered_g = false;
  b.flags.j_invariant = true;
  b.flags.domega_zero = true;
  b.flags.soldered_j = false;
  return b;
}

GeometryBundle make_conformal_hermitian() {
  SliceChart chart(4, 2, cube(4, 0.6));
  ScalarFieldExpr scale = exp(2.0 * (0.3 * X(0)));  // e^{2f}, f = 0.3 x^1 (a normal coordinate)
  TensorField gt(4, 0, 2, Symmetry::symmetric_cov);
  for (int i = 0; i < 4; ++i) gt.component({i, i}) = scale;
  GeometryBundle b = make_bundle("conformal_hermitian",
                                 "R^4 with g = e^{0.6 x^1} delta and standard J, N = {x^1=x^2=0}",
                                 chart, MetricField(std::move(gt)));
  b.J = constant_j_field(4, standard_j_matrix(4));
  b.flags.totally_geodesic = false;
  b.flags.soldered_g = false;
  b.flags.j_invariant = true;
  b.flags.domega_zero = false;
  b.flags.soldered_j = true;
  b.coordinate_normal_ok = true;
  return b;
}

GeometryBundle make_nonintegrable_j6() {
  SliceChart chart(6, 2, cube(6, 1.0));
  GeometryBundle b = make_bundle(
      "nonintegrable_J6",
      "flat R^6, N = {x^1..x^4=0} 2-plane; J rotates with the tangent coordinate (N_J != 0)",
      chart, euclidean_metric(6));

  // Normal 4-block: R(phi) J0 R(phi)^{-1} with R a rotation in the (1,3)
  // plane of the block and phi = 0.5 y^5; tangent 2-block: constant rotation.
  std::vector<double> j0 = standard_j_matrix(4);
  ScalarFieldExpr phi = 0.5 * X(4);
  ScalarFieldExpr c = cos(phi), s = sin(phi);
  std::vector<ScalarFieldExpr> rot(16, ScalarFieldExpr(0.0));
  auto R = [&rot](int r, int cc) -> ScalarFieldExpr& { return rot[r * 4 + cc]; };
  R(0, 0) = c;  R(0, 2) = -s;
  R(2, 0) = s;  R(2, 2) = c;
  R(1, 1) = ScalarFieldExpr(1.0);
  R(3, 3) = ScalarFieldExpr(1.0);

  TensorField j(6, 1, 1);
  for (int r = 0; r < 4; ++r)
    for (int cc = 0; cc < 4; ++cc) {
      ScalarFieldExpr e(0.0);
      for (int a = 0; a < 4; ++a)
        for (int d = 0; d < 4; ++d)
          // (R J0 R^T)^r_c; R^{-1} = R^T for a rotation.
          e = e + R(r, a) * ScalarFieldExpr(j0[static_cast<size_t>(a) * 4 + d]) * R(cc, d);
      j.component({cc, r}) = e;
    }
  j.component({4, 5}) = ScalarFieldExpr(1.0);   // J^5_4 = 1
  j.component({5, 4}) = ScalarFieldExpr(-1.0);  // J^4_5 = -1
  b.J = std::move(j);

  b.flags.totally_geodesic = true;
  b.flags.soldered_g = true;
  b.flags.j_invariant = true;
  b.flags.domega_zero = false;
  b.flags.soldered_j = true;
  b.coordinate_normal_ok = true;
  return b;
}

GeometryBundle make_graph_surface() {
  // Monge patch z = h(y1,y2) + x in flat R^3, h = 0.2 (y1^2 - y2^2).
  Box box{{-0.5, -1.0, -1.0}, {0.5, 1.0, 1.0}};
  SliceChart chart(3, 2, box);

  ChartEmbedding emb;
  emb.dim = 3;
  emb.map = {X(1), X(2), 0.2 * (X(1) * X(1) - X(2) * X(2)) + X(0)};
  emb.jac = {
      0.0, 1.0,        0.0,
      0.0, 0.0,        1.0,
      1.0, 0.4 * X(1), -0.4 * X(2),
  };
  MetricField g = pullback_flat_metric(emb);

  GeometryBundle b = make_bundle("graph_surface",
                                 "saddle graph z = 0.2(y1^2 - y2^2) in flat R^3 (generic beta)",
                                 chart, g);

  // A = a Id + b nhat (x) flat(nhat): g-symmetric, preserves TN and nu N on N.
  ScalarFieldExpr a_expr = ScalarFieldExpr(1.0) + 0.1 * X(0) + 0.05 * X(1);
  ScalarFieldExpr b_expr = ScalarFieldExpr(0.5) + 0.2 * X(2);
  TensorField a(3, 1, 1);
  for (int r = 0; r < 3; ++r)
    for (int cc = 0; cc < 3; ++cc) {
      a.component({cc, r}) =
          ScalarFieldExpr([g, chart, a_expr, b_expr, r, cc](std::span<const Dual> x) {
            DualMatrix frame = riemannian_frame_dual(g, chart, x);
            std::vector<Dual> gm = g.matrix_dual(x);
            Dual flat_c(0.0);  // (flat nhat)_cc = g_{cc j} nhat^j
            for (int jj = 0; jj < 3; ++jj)
              flat_c = flat_c + gm[static_cast<size_t>(cc) * 3 + jj] * frame.at(0, jj);
            Dual val = b_expr(x) * frame.at(0, r) * flat_c;
            if (r == cc) val = val + a_expr(x);
            return val;
          });
    }
  b.aux.push_back({"A_sym", std::move(a), +1});
  b.flags.totally_geodesic = false;
  b.flags.soldered_g = false;
  return b;
}

void validate_bundle(const GeometryBundle& b) {
  if (b.J) {
    check_almost_hermitian(b.g, *b.J, sample_in_domain(b.chart, 50, 1234), 1e-10);
  }
  if (b.id == "parabola_complex_curve") {
    Point near_one({0.0, 0.0, 1.0, 0.0});
    if (second_fundamental_form(b.g, b.chart, b.norm, near_one).max_abs() <= 0.1)
      throw std::runtime_error("catalog: parabola_complex_curve beta floor not met");
  }
  if (b.id == "nonintegrable_J6") {
    double worst = 0.0;
    for (const Point& pt : sample_on_submanifold(b.chart, 50, 1234)) {
      TensorValue nij = nijenhuis(*b.J, pt);
      Eigen::MatrixXd frame = b.norm.normal_frame(b.chart, pt);
      const int k = b.chart.normal_dim();
      for (int a = 0; a < k; ++a)
        for (int u = 0; u < b.chart.sub_dim; ++u)
          for (int r = 0; r < b.chart.ambient_dim; ++r) {
            double s = 0.0;
            for (int i = 0; i < b.chart.ambient_dim; ++i)
              s += frame(i, a) * nij.at({i, k + u, r});
            worst = std::max(worst, std::abs(s));
          }
    }
    if (worst <= 1e-3)
      throw std::runtime_error("catalog: nonintegrable_J6 built with a trivial Nijenhuis tensor");
  }
}

std::map<std::string, GeometryBundle> build_catalog() {
  std::map<std::string, GeometryBundle> cat;
  for (GeometryBundle& b : std::vector<GeometryBundle>{
           make_euclid_slice(), make_polar_circle(), make_flat_kahler_line(),
           make_parabola_complex_curve(), make_conformal_hermitian(), make_nonintegrable_j6(),
           make_graph_surface()}) {
    validate_bundle(b);
    std::string id = b.id;
    cat.emplace(std::move(id), std::move(b));
  }
  return cat;
}

const std::map<std::string, GeometryBundle>& catalog() {
  static const std::map<std::string, GeometryBundle> cat = build_catalog();
  return cat;
}

}  // namespace

MetricField pullback_flat_metric(const ChartEmbedding& emb) {
  const int m = emb.dim;
  TensorField g(m, 0, 2, Symmetry::symmetric_cov);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ScalarFieldExpr e(0.0);
      for (int r = 0; r < m; ++r) e = e + emb.jac_at(r, i) * emb.jac_at(r, j);
      g.component({i, j}) = e;
    }
  return MetricField(std::move(g));
}

TensorField pullback_constant_j(const ChartEmbedding& emb, const std::vector<double>& j0) {
  const int m = emb.dim;
  ChartEmbedding copy = emb;
  TensorField j(m, 1, 1);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      // (Jac^{-1} J0 Jac)^r_c, the inverse taken in dual arithmetic so the
      // pulled-back structure stays differentiable.
      j.component({c, r}) = ScalarFieldExpr([copy, j0, m, r, c](std::span<const Dual> x) {
        DualMatrix jac(m, m);
        for (int rr = 0; rr < m; ++rr)
          for (int cc = 0; cc < m; ++cc) jac.at(rr, cc) = copy.jac_at(rr, cc)(x);
        DualMatrix rhs(m, 1);  // J0 * (Jac column c)
        for (int rr = 0; rr < m; ++rr) {
          Dual s(0.0);
          for (int l = 0; l < m; ++l)
            s = s + Dual(j0[static_cast<size_t>(rr) * m + l]) * jac.at(l, c);
          rhs.at(rr, 0) = s;
        }
        return dual_solve(jac, rhs).at(r, 0);
      });
    }
  return j;
}

std::vector<std::string> geometry_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : catalog()) ids.push_back(id);
  return ids;
}

const GeometryBundle& get_geometry(const std::string& id) {
  const auto& cat = catalog();
  auto it = cat.find(id);
  if (it == cat.end()) throw std::invalid_argument("unknown geometry id: " + id);
  return it->second;
}

}  // namespace sold
