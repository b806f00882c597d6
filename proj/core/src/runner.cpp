#include "sold/runner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace sold {

namespace {

constexpr double kFlagTol = 1e-8;
constexpr double kDerivFreeTol = 1e-9;

struct FieldRef {
  std::string name;
  const TensorField* field;
  int sign;  // meaningful for (1,1) fields only
};

std::vector<FieldRef> adapted_fields(const GeometryBundle& b) {
  std::vector<FieldRef> fields;
  fields.push_back({"g", &b.g.tensor(), +1});
  if (b.J) fields.push_back({"J", &*b.J, -1});
  for (const AuxField& aux : b.aux) fields.push_back({aux.name, &aux.field, aux.sign});
  return fields;
}

void add(GeometryReport& rep, std::string id, double residual, double tol) {
  rep.identities.push_back({std::move(id), residual, tol, residual <= tol});
}

void add_bool(GeometryReport& rep, std::string id, bool ok) {
  rep.identities.push_back({std::move(id), ok ? 0.0 : 1.0, 0.5, ok});
}

void run_adapted_suite(const GeometryBundle& b, const RunConfig& cfg, GeometryReport& rep,
                       const std::vector<Point>& pts) {
  const int m = b.chart.ambient_dim;
  const int k = b.chart.normal_dim();
  double frame_dual = 0.0, ortho = 0.0;
  for (const Point& pt : pts) {
    Eigen::MatrixXd f = b.norm.full_frame(b.chart, pt);
    Eigen::MatrixXd c = b.norm.coframe(b.chart, pt);
    frame_dual = std::max(frame_dual,
                          (c * f - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
    Eigen::MatrixXd G = b.g.matrix(pt);
    for (int a = 0; a < k; ++a)
      for (int u = 0; u < b.chart.sub_dim; ++u) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += G(i, k + u) * f(i, a);
        ortho = std::max(ortho, std::abs(s));
      }
  }
  add(rep, "frame_duality", frame_dual, cfg.tol_frame);
  add(rep, "normal_orthogonality", ortho, cfg.tol_frame);

  for (const FieldRef& fr : adapted_fields(b)) {
    double worst = 0.0;
    for (const Point& pt : pts)
      worst = std::max(worst, check_adapted(*fr.field, b.chart, b.norm, pt).overall());
    add(rep, "adapted_" + fr.name, worst, cfg.tol_frame);
  }
}

void run_obstruction_suite(const GeometryBundle& b, const RunConfig& cfg, GeometryReport& rep,
                           const std::vector<Point>& pts) {
  const int k = b.chart.normal_dim();
  const int npts = std::min<int>(50, static_cast<int>(pts.size()));

  for (const FieldRef& fr : adapted_fields(b)) {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      ExtensionPerturbation pert = random_perturbation(b.chart, rng);
      for (int s = 0; s < npts; ++s)
        for (int a = 0; a < k; ++a)
          worst = std::max(worst, extension_independence_residual(*fr.field, b.chart, b.norm, a,
                                                                 pts[s], pert));
    }
    add(rep, "extension_independence_" + fr.name, worst, cfg.tol_identity);

    if (b.coordinate_normal_ok) {
      double disc = 0.0;
      for (int s = 0; s < npts; ++s)
        disc = std::max(disc, residual_local_criterion(*fr.field, b.chart, pts[s]).discrepancy);
      add(rep, "local_criterion_" + fr.name, disc, kDerivFreeTol);
    }
  }

  if (b.id == "polar_circle") {
    // w_g(dx)(dy,dy) = 2 at every on-N point.
    double worst = 0.0;
    for (const Point& pt : pts) {
      ObstructionValue w = soldering_obstruction(b.g.tensor(), b.chart, b.norm, 0, pt);
      int idx[2] = {0, 0};
      worst = std::max(worst, std::abs(w.at(std::span<const int>(idx, 2)) - 2.0));
    }
    add(rep, "wg_spot", worst, 1e-8);
  }
}

void run_identities_suite(const GeometryBundle& b, const RunConfig& cfg, GeometryReport& rep,
                          const std::vector<Point>& pts) {
  double metric_ob = 0.0;
  for (const Point& pt : pts)
    metric_ob = std::max(metric_ob, residual_metric_obstruction(b.g, b.chart, b.norm, pt));
  add(rep, "metric_obstruction", metric_ob, cfg.tol_identity);

  for (const FieldRef& fr : adapted_fields(b)) {
    if (fr.field->contravariant_rank() != 1 || fr.field->covariant_rank() != 1) continue;
    double conn = 0.0, sym = 0.0, nij = 0.0, par = 0.0;
    bool parallel_applicable = true;
    for (const Point& pt : pts) {
      conn = std::max(conn, residual_connection_formula(*fr.field, fr.sign, b.g, b.chart, b.norm, pt));
      sym = std::max(sym, residual_symmetry(*fr.field, fr.sign, b.g, b.chart, b.norm, pt));
      nij = std::max(nij, residual_nijenhuis(*fr.field, fr.sign, b.g, b.chart, b.norm, pt));
      if (parallel_applicable) {
        ParallelCorollaryReport pc =
            check_parallel_corollary(*fr.field, fr.sign, b.g, b.chart, b.norm, pt);
        parallel_applicable = pc.applicable;
        par = std::max(par, pc.residual);
      }
    }
    add(rep, "connection_formula_" + fr.name, conn, cfg.tol_identity);
    add(rep, "symmetry_" + fr.name, sym, cfg.tol_identity);
    add(rep, "nijenhuis_pairing_" + fr.name, nij, cfg.tol_identity);
    if (parallel_applicable) add(rep, "parallel_" + fr.name, par, cfg.tol_identity);
  }
}

void run_kahler_suite(const GeometryBundle& b, const RunConfig& cfg, GeometryReport& rep,
                      const std::vector<Point>& pts) {
  if (!b.J) return;
  double ff_resid = 0.0;
  for (const Point& pt : pts)
    ff_resid = std::max(ff_resid, residual_kahler_identity(b.g, *b.J, b.chart, b.norm, pt));
  add(rep, "fundamental_form_identity", ff_resid, cfg.tol_identity);

  ClosedStructureReport cls =
      classify_closed_structure(b.g, *b.J, b.chart, b.norm, cfg.tol_identity, cfg.samples, cfg.seed);
  add_bool(rep, "shape_2form_consistency", cls.shape_2form_consistent);
  add_bool(rep, "closed_equivalence", !cls.equivalence_applicable || cls.equivalence_holds);
}

void run_flag_table(const GeometryBundle& b, const RunConfig& cfg, GeometryReport& rep) {
  auto push = [&rep](const char* name, bool expected, bool observed) {
    rep.flags.push_back({name, expected, observed, expected == observed});
  };

  double max_beta = 0.0;
  for (const Point& pt : sample_on_submanifold(b.chart, cfg.samples, cfg.seed))
    max_beta = std::max(max_beta, second_fundamental_form(b.g, b.chart, b.norm, pt).max_abs());
  push("totally_geodesic", b.flags.totally_geodesic, max_beta <= kFlagTol);

  SolderVerdict gsold =
      is_soldered(b.g.tensor(), b.chart, b.norm, cfg.tol_identity, cfg.samples, cfg.seed);
  push("soldered_g", b.flags.soldered_g, gsold.soldered);

  if (b.J) {
    ClosedStructureReport cls =
        classify_closed_structure(b.g, *b.J, b.chart, b.norm, cfg.tol_identity, cfg.samples, cfg.seed);
    if (b.flags.j_invariant) push("J_invariant", *b.flags.j_invariant, cls.j_invariant);
    if (b.flags.domega_zero) push("dOmega_zero", *b.flags.domega_zero, cls.domega_zero);
    if (b.flags.soldered_j) push("soldered_J", *b.flags.soldered_j, cls.soldered_j);
  }
}

GeometryReport run_geometry(const GeometryBundle& b, const RunConfig& cfg) {
  GeometryReport rep;
  rep.id = b.id;
  std::vector<Point> pts = sample_on_submanifold(b.chart, cfg.samples, cfg.seed);

  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "adapted") run_adapted_suite(b, cfg, rep, pts);
  if (all || cfg.suite == "obstruction") run_obstruction_suite(b, cfg, rep, pts);
  if (all || cfg.suite == "identities") run_identities_suite(b, cfg, rep, pts);
  if (all || cfg.suite == "kahler") run_kahler_suite(b, cfg, rep, pts);
  if (all) run_flag_table(b, cfg, rep);

  std::sort(rep.identities.begin(), rep.identities.end(),
            [](const IdentityReport& x, const IdentityReport& y) { return x.id < y.id; });
  rep.pass = true;
  for (const IdentityReport& ir : rep.identities) rep.pass = rep.pass && ir.pass;
  for (const FlagReport& fr : rep.flags) rep.pass = rep.pass && fr.match;
  return rep;
}

}  // namespace

SuiteReport run_suites(const RunConfig& cfg) {
  static const std::vector<std::string> kSuites = {"adapted", "obstruction", "identities",
                                                   "kahler", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
    throw std::invalid_argument("unknown suite: " + cfg.suite);

  std::vector<std::string> ids = cfg.geometries.empty() ? geometry_ids() : cfg.geometries;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport report;
  report.config = cfg;
  report.pass = true;
  for (const std::string& id : ids) {
    GeometryReport g = run_geometry(get_geometry(id), cfg);  // throws on unknown id
    report.pass = report.pass && g.pass;
    report.geometries.push_back(std::move(g));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

nlohmann::json report_to_json(const SuiteReport& report) {
  nlohmann::json j;
  j["config"] = {
      {"geometries", report.config.geometries},
      {"suite", report.config.suite},
      {"samples", report.config.samples},
      {"seed", report.config.seed},
      {"tol_identity", report.config.tol_identity},
      {"tol_frame", report.config.tol_frame},
  };
  j["geometries"] = nlohmann::json::array();
  for (const GeometryReport& g : report.geometries) {
    nlohmann::json jg;
    jg["id"] = g.id;
    jg["flags_expected"] = nlohmann::json::object();
    jg["flags_observed"] = nlohmann::json::object();
    for (const FlagReport& f : g.flags) {
      jg["flags_expected"][f.name] = f.expected;
      jg["flags_observed"][f.name] = f.observed;
    }
    jg["identities"] = nlohmann::json::array();
    for (const IdentityReport& ir : g.identities)
      jg["identities"].push_back({{"id", ir.id},
                                  {"max_residual", ir.max_residual},
                                  {"tolerance", ir.tolerance},
                                  {"pass", ir.pass}});
    jg["pass"] = g.pass;
    j["geometries"].push_back(std::move(jg));
  }
  j["pass"] = report.pass;
  return j;
}

std::string report_to_text(const SuiteReport& report) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  for (const GeometryReport& g : report.geometries) {
    os << "=== " << g.id << " ===\n";
    for (const IdentityReport& ir : g.identities)
      os << "  " << (ir.pass ? "PASS" : "FAIL") << "  " << ir.id
         << "  max_residual=" << ir.max_residual << "  tol=" << ir.tolerance << "\n";
    for (const FlagReport& f : g.flags)
      os << "  " << (f.match ? "PASS" : "FAIL") << "  flag " << f.name
         << "  expected=" << (f.expected ? "yes" : "no")
         << "  observed=" << (f.observed ? "yes" : "no") << "\n";
  }
  os << (report.pass ? "OVERALL PASS" : "OVERALL FAIL") << "  (" << std::fixed
     << report.wall_seconds << "s)\n";
  return os.str();
}

nlohmann::json catalog_listing_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const std::string& id : geometry_ids()) {
    const GeometryBundle& b = get_geometry(id);
    nlohmann::json j;
    j["id"] = b.id;
    j["description"] = b.description;
    j["ambient_dim"] = b.chart.ambient_dim;
    j["sub_dim"] = b.chart.sub_dim;
    j["has_J"] = b.J.has_value();
    j["flags"] = {{"totally_geodesic", b.flags.totally_geodesic},
                  {"soldered_g", b.flags.soldered_g}};
    if (b.flags.j_invariant) j["flags"]["J_invariant"] = *b.flags.j_invariant;
    if (b.flags.domega_zero) j["flags"]["dOmega_zero"] = *b.flags.domega_zero;
    if (b.flags.soldered_j) j["flags"]["soldered_J"] = *b.flags.soldered_j;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string catalog_listing_text() {
  std::ostringstream os;
  for (const std::string& id : geometry_ids()) {
    const GeometryBundle& b = get_geometry(id);
    os << id << ": " << b.description << " [tg=" << (b.flags.totally_geodesic ? "y" : "n")
       << " sg=" << (b.flags.soldered_g ? "y" : "n");
    if (b.flags.soldered_j) os << " sJ=" << (*b.flags.soldered_j ? "y" : "n");
    os << "]\n";
  }
  return os.str();
}

}  // namespace sold
