#pragma once

#include <json.hpp>

#include "sold/catalog.hpp"

namespace sold {

struct RunConfig {
  std::vector<std::string> geometries;  // empty = whole catalog
  std::string suite = "all";            // adapted | obstruction | identities | kahler | all
  int samples = 200;
  uint64_t seed = 0;
  double tol_identity = 1e-7;
  double tol_frame = 1e-10;
  std::string format = "text";          // text | json
  std::string out_path;                 // empty = stdout
};

struct IdentityReport {
  std::string id;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct FlagReport {
  std::string name;
  bool expected = false;
  bool observed = false;
  bool match = false;
};

struct GeometryReport {
  std::string id;
  std::vector<FlagReport> flags;
  std::vector<IdentityReport> identities;
  bool pass = false;
};

struct SuiteReport {
  RunConfig config;
  std::vector<GeometryReport> geometries;
  bool pass = false;
  double wall_seconds = 0.0;  // text output only; excluded from JSON for determinism
};

/// Executes the selected suites over the selected geometries. Throws
/// std::invalid_argument for unknown geometry ids or suite names.
SuiteReport run_suites(const RunConfig& config);

/// JSON per the report schema: { config, geometries: [...], pass }.
nlohmann::json report_to_json(const SuiteReport& report);

std::string report_to_text(const SuiteReport& report);

nlohmann::json catalog_listing_json();
std::string catalog_listing_text();

}  // namespace sold
