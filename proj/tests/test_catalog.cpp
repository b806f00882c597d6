#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sold/catalog.hpp"

using namespace sold;

TEST_CASE("catalog ids are stable, sorted and complete") {
  std::vector<std::string> ids = geometry_ids();
  CHECK(ids.size() == 7);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  std::vector<std::string> expect = {"conformal_hermitian",    "euclid_slice",
                                     "flat_kahler_line",       "graph_surface",
                                     "nonintegrable_J6",       "parabola_complex_curve",
                                     "polar_circle"};
  CHECK(ids == expect);
  CHECK_THROWS_AS(get_geometry("no_such_geometry"), std::invalid_argument);
}

TEST_CASE("bundles are self-consistent") {
  for (const auto& id : geometry_ids()) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    CHECK(b.id == id);
    CHECK_FALSE(b.description.empty());
    CHECK(b.g.dim() == b.chart.ambient_dim);
    CHECK(b.norm.is_riemannian());
    // Repeated access returns the same cached bundle.
    CHECK(&get_geometry(id) == &b);
  }
}

TEST_CASE("expected flag table") {
  auto flags = [](const char* id) { return get_geometry(id).flags; };

  ExpectedFlags f = flags("euclid_slice");
  CHECK(f.totally_geodesic);
  CHECK(f.soldered_g);
  CHECK_FALSE(f.j_invariant.has_value());

  f = flags("polar_circle");
  CHECK_FALSE(f.totally_geodesic);
  CHECK_FALSE(f.soldered_g);

  f = flags("flat_kahler_line");
  CHECK(f.totally_geodesic);
  CHECK(f.soldered_g);
  CHECK(f.j_invariant.value());
  CHECK(f.domega_zero.value());
  CHECK(f.soldered_j.value());

  f = flags("parabola_complex_curve");
  CHECK_FALSE(f.totally_geodesic);
  CHECK_FALSE(f.soldered_g);
  CHECK(f.j_invariant.value());
  CHECK(f.domega_zero.value());
  CHECK_FALSE(f.soldered_j.value());

  f = flags("conformal_hermitian");
  CHECK_FALSE(f.totally_geodesic);
  CHECK_FALSE(f.soldered_g);
  CHECK(f.j_invariant.value());
  CHECK_FALSE(f.domega_zero.value());
  CHECK(f.soldered_j.value());

  f = flags("nonintegrable_J6");
  CHECK(f.totally_geodesic);
  CHECK(f.soldered_g);
  CHECK(f.j_invariant.value());
  CHECK_FALSE(f.domega_zero.value());
  CHECK(f.soldered_j.value());

  f = flags("graph_surface");
  CHECK_FALSE(f.totally_geodesic);
  CHECK_FALSE(f.soldered_g);
  CHECK_FALSE(f.j_invariant.has_value());
}

TEST_CASE("complex structures are present exactly where flagged") {
  for (const auto& id : geometry_ids()) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    CHECK(b.J.has_value() == b.flags.j_invariant.has_value());
  }
}

TEST_CASE("almost-Hermitian compatibility at random domain points") {
  for (const auto& id : geometry_ids()) {
    const GeometryBundle& b = get_geometry(id);
    if (!b.J) continue;
    CAPTURE(id);
    check_almost_hermitian(b.g, *b.J, sample_in_domain(b.chart, 40, 17));
  }
}

TEST_CASE("auxiliary fields carry the declared g-symmetry") {
  for (const auto& id : geometry_ids()) {
    const GeometryBundle& b = get_geometry(id);
    for (const AuxField& aux : b.aux) {
      CAPTURE(id);
      CAPTURE(aux.name);
      for (const Point& pt : sample_in_domain(b.chart, 15, 19)) {
        Eigen::MatrixXd gm = b.g.matrix(pt);
        int m = b.chart.ambient_dim;
        Eigen::MatrixXd av(m, m);  // av(r,c) = A^r_c
        TensorValue v = aux.field.eval(pt);
        for (int c = 0; c < m; ++c)
          for (int r = 0; r < m; ++r) av(r, c) = v.at({c, r});
        Eigen::MatrixXd ga = gm * av;  // g(A.,.)
        CHECK((ga - aux.sign * ga.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("embedded charts: supplied jacobians match the map derivatives") {
  // Rebuild the embeddings used by the curved geometries and verify the
  // closed-form jacobian entries against dual-number gradients of the map.
  auto check_embedding = [](const ChartEmbedding& emb, const SliceChart& chart) {
    for (const Point& pt : sample_in_domain(chart, 25, 29))
      for (int r = 0; r < emb.dim; ++r) {
        auto jet = emb.map[r].jet(pt.coords);
        for (int c = 0; c < emb.dim; ++c)
          CHECK(std::abs(emb.jac_at(r, c).value(pt.coords) - jet.grad[c]) < 1e-12);
      }
  };
  {
    // Same shape as parabola_complex_curve: (x1,x2,y1,y2) -> graph of w = z^2.
    auto x1 = ScalarFieldExpr::coord(0), x2 = ScalarFieldExpr::coord(1);
    auto y1 = ScalarFieldExpr::coord(2), y2 = ScalarFieldExpr::coord(3);
    ChartEmbedding emb;
    emb.dim = 4;
    emb.map = {y1, y2, y1 * y1 - y2 * y2 + x1, ScalarFieldExpr(2.0) * y1 * y2 + x2};
    emb.jac = {0.0, 0.0, 1.0,       0.0,       0.0, 0.0, 0.0,       1.0,
               1.0, 0.0, 2.0 * y1,  -(2.0 * y2), 0.0, 1.0, 2.0 * y2, 2.0 * y1};
    check_embedding(emb, get_geometry("parabola_complex_curve").chart);
    // And the pullback metric of this embedding matches the catalog metric.
    MetricField g = pullback_flat_metric(emb);
    const GeometryBundle& b = get_geometry("parabola_complex_curve");
    for (const Point& pt : sample_in_domain(b.chart, 15, 31))
      CHECK((g.matrix(pt) - b.g.matrix(pt)).cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    // Same shape as graph_surface: (x,y1,y2) -> (y1, y2, 0.2(y1^2-y2^2) + x).
    auto x = ScalarFieldExpr::coord(0);
    auto y1 = ScalarFieldExpr::coord(1), y2 = ScalarFieldExpr::coord(2);
    ChartEmbedding emb;
    emb.dim = 3;
    emb.map = {y1, y2, ScalarFieldExpr(0.2) * (y1 * y1 - y2 * y2) + x};
    emb.jac = {0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.4 * y1, -(0.4 * y2)};
    check_embedding(emb, get_geometry("graph_surface").chart);
    MetricField g = pullback_flat_metric(emb);
    const GeometryBundle& b = get_geometry("graph_surface");
    for (const Point& pt : sample_in_domain(b.chart, 15, 31))
      CHECK((g.matrix(pt) - b.g.matrix(pt)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pullback helpers agree with hand-built flat data") {
  // Identity embedding: pullbacks are the flat metric and the constant J.
  ChartEmbedding emb;
  emb.dim = 2;
  emb.map = {ScalarFieldExpr::coord(0), ScalarFieldExpr::coord(1)};
  emb.jac = {1.0, 0.0, 0.0, 1.0};
  MetricField g = pullback_flat_metric(emb);
  Point pt({0.3, -0.4});
  CHECK((g.matrix(pt) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  std::vector<double> j0 = {0.0, -1.0, 1.0, 0.0};  // row-major J^r_c with J e0 = e1
  TensorField j = pullback_constant_j(emb, j0);
  TensorValue jv = j.eval(pt);
  CHECK(jv.at({0, 1}) == doctest::Approx(1.0));
  CHECK(jv.at({1, 0}) == doctest::Approx(-1.0));
  CHECK(jv.at({0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("nontriviality floors") {
  {
    const GeometryBundle& b = get_geometry("parabola_complex_curve");
    Point pt({0.0, 0.0, 1.0, 0.0});
    CHECK(second_fundamental_form(b.g, b.chart, b.norm, pt).max_abs() > 0.1);
  }
  {
    const GeometryBundle& b = get_geometry("nonintegrable_J6");
    double floor = 0.0;
    for (const Point& pt : sample_on_submanifold(b.chart, 30, 31))
      floor = std::max(floor, nijenhuis(*b.J, pt).max_abs());
    CHECK(floor > 1e-3);
  }
  {
    const GeometryBundle& b = get_geometry("conformal_hermitian");
    TensorField omega = kahler_form(b.g, *b.J);
    double floor = 0.0;
    for (const Point& pt : sample_on_submanifold(b.chart, 30, 37))
      floor = std::max(floor, exterior_derivative_2form(omega, pt).max_abs());
    CHECK(floor > 0.01);
  }
}

TEST_CASE("coordinate-aligned normal frames are marked") {
  for (const auto& id : geometry_ids()) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    bool expect = id != "parabola_complex_curve" && id != "graph_surface";
    CHECK(b.coordinate_normal_ok == expect);
    if (!b.coordinate_normal_ok) continue;
    // The riemannian frame really does coincide with d/dx^a on the slice.
    for (const Point& pt : sample_on_submanifold(b.chart, 10, 41)) {
      Eigen::MatrixXd nf = b.norm.normal_frame(b.chart, pt);
      int m = b.chart.ambient_dim, k = b.chart.normal_dim();
      Eigen::MatrixXd expect_cols = Eigen::MatrixXd::Zero(m, k);
      for (int a = 0; a < k; ++a) expect_cols(a, a) = 1.0;
      CHECK((nf - expect_cols).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}
