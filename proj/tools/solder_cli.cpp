// Command-line runner: executes verification suites over the geometry catalog
// and emits deterministic text or JSON reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sold/runner.hpp"

namespace {

int write_output(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 2;
  }
  out << payload;
  return 0;
}

std::string json_bytes(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soldering obstruction engine for submanifolds with a chosen normal bundle"};
  app.require_subcommand(1);

  std::string list_format = "text";
  CLI::App* list_cmd = app.add_subcommand("list", "list catalog geometries");
  list_cmd->add_option("--format", list_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  sold::RunConfig cfg;
  CLI::App* check_cmd = app.add_subcommand("check", "run verification suites");
  check_cmd->add_option("--geometry", cfg.geometries, "geometry id (repeatable; default all)");
  check_cmd->add_option("--suite", cfg.suite, "adapted|obstruction|identities|kahler|all")
      ->check(CLI::IsMember({"adapted", "obstruction", "identities", "kahler", "all"}));
  check_cmd->add_option("--samples", cfg.samples, "on-N sample count")->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", cfg.seed, "RNG seed");
  check_cmd->add_option("--tol-identity", cfg.tol_identity, "identity residual tolerance");
  check_cmd->add_option("--tol-frame", cfg.tol_frame, "algebraic/frame tolerance");
  check_cmd->add_option("--format", cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_option("--out", cfg.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints the message; --help exits cleanly
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list_cmd) {
      std::cout << (list_format == "json" ? json_bytes(sold::catalog_listing_json())
                                          : sold::catalog_listing_text());
      return 0;
    }
    sold::SuiteReport report = sold::run_suites(cfg);
    const std::string payload = cfg.format == "json" ? json_bytes(sold::report_to_json(report))
                                                     : sold::report_to_text(report);
    int rc = write_output(payload, cfg.out_path);
    if (rc != 0) return rc;
    return report.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
