#include <doctest.h>

#include <algorithm>

#include "sold/runner.hpp"

using namespace sold;

namespace {

RunConfig small_config(std::string suite) {
  RunConfig cfg;
  cfg.suite = std::move(suite);
  cfg.samples = 15;
  cfg.geometries = {"polar_circle", "euclid_slice"};
  return cfg;
}

}  // namespace

TEST_CASE("runner validates inputs") {
  RunConfig cfg = small_config("all");
  cfg.geometries = {"no_such_geometry"};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
  cfg = small_config("bogus_suite");
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
}

TEST_CASE("runner reports are sorted and deduplicated") {
  RunConfig cfg = small_config("adapted");
  cfg.geometries = {"polar_circle", "euclid_slice", "polar_circle"};
  SuiteReport rep = run_suites(cfg);
  REQUIRE(rep.geometries.size() == 2);
  CHECK(rep.geometries[0].id == "euclid_slice");
  CHECK(rep.geometries[1].id == "polar_circle");
  for (const GeometryReport& g : rep.geometries) {
    CHECK(std::is_sorted(g.identities.begin(), g.identities.end(),
                         [](const auto& a, const auto& b) { return a.id < b.id; }));
    CHECK(g.pass);
  }
  CHECK(rep.pass);
}

TEST_CASE("empty geometry list means the whole catalog") {
  RunConfig cfg;
  cfg.suite = "adapted";
  cfg.samples = 5;
  SuiteReport rep = run_suites(cfg);
  CHECK(rep.geometries.size() == geometry_ids().size());
}

TEST_CASE("every suite passes on the full catalog") {
  for (const char* suite : {"adapted", "obstruction", "identities", "kahler", "all"}) {
    CAPTURE(suite);
    RunConfig cfg;
    cfg.suite = suite;
    cfg.samples = 10;
    SuiteReport rep = run_suites(cfg);
    CHECK(rep.pass);
  }
}

TEST_CASE("flag table appears only in the full suite and matches expectations") {
  RunConfig cfg;
  cfg.suite = "all";
  cfg.samples = 10;
  SuiteReport rep = run_suites(cfg);
  for (const GeometryReport& g : rep.geometries) {
    CAPTURE(g.id);
    CHECK_FALSE(g.flags.empty());
    for (const FlagReport& f : g.flags) {
      CAPTURE(f.name);
      CHECK(f.match);
      CHECK(f.expected == f.observed);
    }
  }
  cfg.suite = "adapted";
  rep = run_suites(cfg);
  for (const GeometryReport& g : rep.geometries) CHECK(g.flags.empty());
}

TEST_CASE("json report schema") {
  RunConfig cfg = small_config("identities");
  SuiteReport rep = run_suites(cfg);
  nlohmann::json j = report_to_json(rep);
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("geometries"));
  REQUIRE(j.contains("pass"));
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(j["config"]["suite"] == "identities");
  CHECK(j["config"]["samples"] == 15);
  REQUIRE(j["geometries"].is_array());
  REQUIRE(j["geometries"].size() == 2);
  for (const auto& g : j["geometries"]) {
    REQUIRE(g.contains("id"));
    REQUIRE(g.contains("identities"));
    REQUIRE(g.contains("pass"));
    for (const auto& ident : g["identities"]) {
      CHECK(ident.contains("id"));
      CHECK(ident.contains("max_residual"));
      CHECK(ident.contains("tolerance"));
      CHECK(ident.contains("pass"));
      CHECK(ident["pass"].is_boolean());
    }
  }
  // Round-trip through text serialization preserves every byte.
  std::string s = j.dump(2);
  CHECK(nlohmann::json::parse(s) == j);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  RunConfig cfg;
  cfg.suite = "all";
  cfg.samples = 8;
  cfg.seed = 12345;
  std::string s1 = report_to_json(run_suites(cfg)).dump(2);
  std::string s2 = report_to_json(run_suites(cfg)).dump(2);
  CHECK(s1 == s2);
  // Text reports carry timing and are compared without the timing line.
  std::string t1 = report_to_text(run_suites(cfg));
  CHECK(t1.find("OVERALL PASS") != std::string::npos);
}

TEST_CASE("catalog listings cover every geometry") {
  nlohmann::json j = catalog_listing_json();
  REQUIRE(j.is_array());
  CHECK(j.size() == geometry_ids().size());
  std::string text = catalog_listing_text();
  for (const auto& id : geometry_ids()) {
    CHECK(text.find(id) != std::string::npos);
    bool found = false;
    for (const auto& entry : j) found = found || entry["id"] == id;
    CHECK(found);
  }
}

TEST_CASE("failures propagate to the overall verdict") {
  RunConfig cfg = small_config("identities");
  cfg.tol_identity = 1e-300;  // impossible tolerance: residuals of exactly zero still pass
  SuiteReport rep = run_suites(cfg);
  // At least one identity on the curved geometry has a nonzero residual, so
  // the absurd tolerance must fail it and the failure must reach the top.
  bool any_fail = false;
  for (const auto& g : rep.geometries)
    for (const auto& ident : g.identities) any_fail = any_fail || !ident.pass;
  CHECK(any_fail == !rep.pass);
}
