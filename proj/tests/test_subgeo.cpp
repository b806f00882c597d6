#include <doctest.h>

#include <cmath>

#include "sold/catalog.hpp"

using namespace sold;

TEST_CASE("frame duality and orthonormality across the catalog") {
  for (const auto& id : geometry_ids()) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    for (const Point& pt : sample_on_submanifold(b.chart, 25, 101)) {
      Eigen::MatrixXd frame = b.norm.full_frame(b.chart, pt);
      Eigen::MatrixXd co = b.norm.coframe(b.chart, pt);
      Eigen::MatrixXd prod = co * frame;
      int m = b.chart.ambient_dim;
      CHECK((prod - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);

      // Normal frame columns are g-orthonormal and g-orthogonal to the
      // tangent coordinate vectors.
      Eigen::MatrixXd gm = b.g.matrix(pt);
      Eigen::MatrixXd nf = b.norm.normal_frame(b.chart, pt);
      int k = b.chart.normal_dim();
      Eigen::MatrixXd gram = nf.transpose() * gm * nf;
      CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-10);
      for (int u = 0; u < b.chart.sub_dim; ++u) {
        Eigen::VectorXd tv = Eigen::VectorXd::Zero(m);
        tv(b.chart.tangent_index(u)) = 1.0;
        CHECK((nf.transpose() * gm * tv).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("riemannian frame fields are differentiable and constant off the slice") {
  const GeometryBundle& b = get_geometry("graph_surface");
  TensorField f0 = b.norm.frame_field(b.chart, 0);
  Point on({0.0, 0.4, -0.2});
  Point off({0.3, 0.4, -0.2});
  TensorValue von = f0.eval(on), voff = f0.eval(off);
  for (int i = 0; i < 3; ++i) CHECK(von.at({i}) == doctest::Approx(voff.at({i})).epsilon(1e-13));
  // On N the field matches the pointwise frame columns.
  Eigen::MatrixXd nf = b.norm.normal_frame(b.chart, on);
  for (int i = 0; i < 3; ++i) CHECK(von.at({i}) == doctest::Approx(nf(i, 0)).epsilon(1e-12));
  // And its normal-coordinate partials vanish identically.
  TensorJet jet = f0.jet(off);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(jet.partial[0].at({i})) < 1e-14);
}

TEST_CASE("coordinate normalization uses the raw normal coordinate fields") {
  Box box{{-1, -1, -1}, {1, 1, 1}};
  SliceChart chart(3, 2, box);
  Normalization norm = Normalization::coordinate();
  Point pt({0.0, 0.2, 0.5});
  Eigen::MatrixXd nf = norm.normal_frame(chart, pt);
  CHECK(nf(0, 0) == doctest::Approx(1.0));
  CHECK(nf(1, 0) == doctest::Approx(0.0));
  CHECK(nf(2, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(norm.metric(), std::logic_error);
}

TEST_CASE("induced metric of the saddle graph matches the first fundamental form") {
  const GeometryBundle& b = get_geometry("graph_surface");
  for (const Point& pt : sample_on_submanifold(b.chart, 30, 7)) {
    double y1 = pt.coords[1], y2 = pt.coords[2];
    double h1 = 0.4 * y1, h2 = -0.4 * y2;  // gradient of h = 0.2(y1^2 - y2^2)
    Eigen::Matrix2d expect;
    expect << 1 + h1 * h1, h1 * h2, h1 * h2, 1 + h2 * h2;
    Eigen::MatrixXd got = induced_metric(b.g, b.chart, pt);
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("second fundamental form of the saddle graph matches the graph formula") {
  // For z = h(y): II_uv = h_uv / sqrt(1 + |grad h|^2) against the unit normal.
  const GeometryBundle& b = get_geometry("graph_surface");
  for (const Point& pt : sample_on_submanifold(b.chart, 30, 13)) {
    double y1 = pt.coords[1], y2 = pt.coords[2];
    double h1 = 0.4 * y1, h2 = -0.4 * y2;
    double w = std::sqrt(1.0 + h1 * h1 + h2 * h2);
    SecondFundamentalFormValue beta = second_fundamental_form(b.g, b.chart, b.norm, pt);
    CHECK(beta.at(0, 0, 0) == doctest::Approx(0.4 / w).epsilon(1e-10));
    CHECK(beta.at(0, 1, 1) == doctest::Approx(-0.4 / w).epsilon(1e-10));
    CHECK(std::abs(beta.at(0, 0, 1)) < 1e-10);
    CHECK(beta.at(0, 0, 1) == doctest::Approx(beta.at(0, 1, 0)).epsilon(1e-12));
  }
}

TEST_CASE("second fundamental form spot value on the circle fiber") {
  const GeometryBundle& b = get_geometry("polar_circle");
  Point pt({0.0, 0.8});
  SecondFundamentalFormValue beta = second_fundamental_form(b.g, b.chart, b.norm, pt);
  CHECK(beta.at(0, 0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("weingarten decomposition on the circle fiber") {
  const GeometryBundle& b = get_geometry("polar_circle");
  Point pt({0.0, -0.5});
  WeingartenValue wg = weingarten_decompose(b.g, b.chart, b.norm, 0, 0, pt);
  CHECK(wg.weingarten(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(wg.normal_connection(0)) < 1e-12);
}

TEST_CASE("weingarten operator is dual to the second fundamental form") {
  // beta(a,u,v) = sum_w W(a,u)_w g_ind(w,v) for all catalog geometries.
  for (const auto& id : geometry_ids()) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    for (const Point& pt : sample_on_submanifold(b.chart, 10, 41)) {
      SecondFundamentalFormValue beta = second_fundamental_form(b.g, b.chart, b.norm, pt);
      Eigen::MatrixXd gi = induced_metric(b.g, b.chart, pt);
      for (int a = 0; a < b.chart.normal_dim(); ++a)
        for (int u = 0; u < b.chart.sub_dim; ++u) {
          WeingartenValue wg = weingarten_decompose(b.g, b.chart, b.norm, a, u, pt);
          for (int v = 0; v < b.chart.sub_dim; ++v) {
            double expect = 0.0;
            for (int w = 0; w < b.chart.sub_dim; ++w) expect += wg.weingarten(w) * gi(w, v);
            CHECK(std::abs(beta.at(a, u, v) - expect) < 1e-9);
          }
        }
    }
  }
}

TEST_CASE("totally geodesic geometries have vanishing second fundamental form") {
  for (const char* id : {"euclid_slice", "flat_kahler_line", "nonintegrable_J6"}) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    for (const Point& pt : sample_on_submanifold(b.chart, 20, 57))
      CHECK(second_fundamental_form(b.g, b.chart, b.norm, pt).max_abs() < 1e-12);
  }
}

TEST_CASE("curved geometries have nonvanishing second fundamental form") {
  for (const char* id : {"polar_circle", "parabola_complex_curve", "graph_surface"}) {
    CAPTURE(id);
    const GeometryBundle& b = get_geometry(id);
    double floor = 0.0;
    for (const Point& pt : sample_on_submanifold(b.chart, 20, 57))
      floor = std::max(floor, second_fundamental_form(b.g, b.chart, b.norm, pt).max_abs());
    CHECK(floor > 0.1);
  }
}

TEST_CASE("extension along the normal directions pins the normal coordinates") {
  Box box{{-1, -1, -1}, {1, 1, 1}};
  SliceChart chart(3, 2, box);
  TensorField f(3, 1, 0);
  f.component({0}) = ScalarFieldExpr::coord(0) + ScalarFieldExpr::coord(1);
  TensorField ext = extend_along_normal(chart, f);
  CHECK(ext.eval(Point({0.7, 0.4, 0.0})).at({0}) == doctest::Approx(0.4));
  TensorJet jet = ext.jet(Point({0.7, 0.4, 0.0}));
  CHECK(std::abs(jet.partial[0].at({0})) < 1e-14);
  CHECK(jet.partial[1].at({0}) == doctest::Approx(1.0));
}

TEST_CASE("perturbed extensions restrict to the base field on the slice") {
  const GeometryBundle& b = get_geometry("graph_surface");
  TensorField base = b.norm.frame_field(b.chart, 0);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    ExtensionPerturbation pert = random_perturbation(b.chart, rng);
    TensorField px = perturbed_extension(base, pert);
    for (const Point& pt : sample_on_submanifold(b.chart, 10, trial)) {
      TensorValue v0 = base.eval(pt), v1 = px.eval(pt);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(v0.at({i}) - v1.at({i})) < 1e-12);
    }
    // Off the slice the perturbation generically changes the field.
  }
}

TEST_CASE("seeded uniform draws are deterministic and in range") {
  std::mt19937_64 a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    double da = uniform_draw(a, -2.0, 3.0);
    double db = uniform_draw(b, -2.0, 3.0);
    double dc = uniform_draw(c, -2.0, 3.0);
    all_equal = all_equal && (da == db);
    any_diff = any_diff || (da != dc);
    CHECK(da >= -2.0);
    CHECK(da < 3.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("on-slice samples are exactly on the slice and reproducible") {
  const GeometryBundle& b = get_geometry("euclid_slice");
  auto p1 = sample_on_submanifold(b.chart, 50, 7);
  auto p2 = sample_on_submanifold(b.chart, 50, 7);
  REQUIRE(p1.size() == 50);
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].coords == p2[i].coords);
    CHECK(p1[i].on_submanifold(b.chart));
    require_in_domain(b.chart, p1[i]);
  }
}

TEST_CASE("chart validation catches malformed inputs") {
  Box box{{-1, -1}, {1, 1}};
  CHECK_THROWS_AS(SliceChart(2, 2, box), std::invalid_argument);
  CHECK_THROWS_AS(SliceChart(2, 0, box), std::invalid_argument);
  SliceChart chart(2, 1, box);
  CHECK_THROWS_AS(require_on_submanifold(chart, Point({0.1, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(require_in_domain(chart, Point({5.0, 0.0})), std::domain_error);
}
