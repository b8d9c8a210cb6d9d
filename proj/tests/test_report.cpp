// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scalelab/report.hpp"

using namespace scalelab;

namespace {

// fast settings for runner tests; gates stay at the defaults
RunConfig quick_config() {
  RunConfig cfg;
  cfg.functionals = {"ne", "tf"};
  cfg.densities = {"gaussian:alpha=1,n=1"};
  cfg.m_set = {0.0, 1.0, 2.0, 3.0};
  cfg.checks = {CheckKind::Homogeneity};
  cfg.pde_points = 40;
  cfg.box_count = 1;
  return cfg;
}

std::string strip_volatile(const std::string& json) {
  std::istringstream in(json);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") != std::string::npos) continue;
    if (line.find("\"timings\"") != std::string::npos) continue;
    out << line << '\n';
  }
  return out.str();
}

} // namespace

TEST_CASE("number and check lists parse") {
  const auto nums = parse_number_list("0.5, 0.7071,1.4142 2");
  REQUIRE(nums.size() == 4);
  CHECK(nums[0] == 0.5);
  CHECK(nums[3] == 2.0);
  CHECK_THROWS_AS(parse_number_list("1,frog"), ConfigError);

  const auto checks = parse_check_list("homogeneity,pde");
  REQUIRE(checks.size() == 2);
  CHECK(checks[1] == CheckKind::Pde);
  CHECK(parse_check_list("all").size() == 7);
  CHECK_THROWS_AS(parse_check_list("bogus"), ConfigError);
}

TEST_CASE("config file loading and overrides") {
  const std::string path = "test_scalelab_config.ini";
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "[run]\n"
        << "functionals = ne, vw\n"
        << "densities = gaussian:alpha=2,n=1 slater:zeta=1,n=1\n"
        << "m_set = 0, 1\n"
        << "lambda_set = 0.5, 1.5, 2\n"
        << "checks = homogeneity\n"
        << "seed = 99\n"
        << "[quadrature]\n"
        << "radial_panels = 30\n"
        << "[thresholds]\n"
        << "homogeneity_p = 1e-5\n"
        << "[output]\n"
        << "json = out.json\n";
  }
  RunConfig cfg;
  load_config_file(cfg, path);
  CHECK(cfg.functionals == std::vector<std::string>{"ne", "vw"});
  REQUIRE(cfg.densities.size() == 2);
  CHECK(cfg.densities[0] == "gaussian:alpha=2,n=1");
  CHECK(cfg.m_set == std::vector<double>{0.0, 1.0});
  CHECK(cfg.seed == 99);
  CHECK(cfg.quadrature.radial_panels == 30);
  CHECK(cfg.thresholds.homogeneity_p == 1e-5);
  CHECK(cfg.out_json == "out.json");
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_config_file(cfg, "missing_file.ini"), ConfigError);
  {
    std::ofstream out(path);
    out << "[run]\nunknown_key = 1\n";
  }
  CHECK_THROWS_AS(load_config_file(cfg, path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("SCALELAB_SEED overrides the configured seed") {
  RunConfig cfg;
  cfg.seed = 5;
  setenv("SCALELAB_SEED", "1234", 1);
  apply_env_overrides(cfg);
  unsetenv("SCALELAB_SEED");
  CHECK(cfg.seed == 1234);
}

TEST_CASE("runner validates the configuration") {
  RunConfig cfg = quick_config();
  cfg.checks.clear();
  CHECK_THROWS_AS(run(cfg), ConfigError);

  cfg = quick_config();
  cfg.functionals = {"bogus"};
  CHECK_THROWS_AS(run(cfg), ConfigError);

  cfg = quick_config();
  cfg.densities = {"gaussian:alpha=oops"};
  CHECK_THROWS_AS(run(cfg), ConfigError);

  cfg = quick_config();
  cfg.lambda_set.clear();
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("a degenerate lambda set marks the check errored, not fatal") {
  RunConfig cfg = quick_config();
  cfg.lambda_set = {1.0};
  const Report report = run(cfg);
  REQUIRE_FALSE(report.homogeneity.empty());
  for (const auto& e : report.homogeneity) {
    CHECK(e.errored);
    CHECK(e.message.find("lambda") != std::string::npos);
  }
  CHECK_FALSE(report.all_passed);
  CHECK(exit_status(report) == 1);
}

TEST_CASE("homogeneity run passes its gates and fills the sweep") {
  RunConfig cfg = quick_config();
  const Report report = run(cfg);
  CHECK(report.all_passed);
  CHECK(exit_status(report) == 0);
  // |functionals| x |densities| x |m_set| entries
  CHECK(report.homogeneity.size() == 2 * 1 * 4);
  // sweep rows: |m_set| x |lambda_set| per (functional, density) pair
  CHECK(report.sweep.size() == 2 * 1 * 4 * cfg.lambda_set.size());
  const std::string csv = to_csv(report);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 1 + static_cast<long>(report.sweep.size()));
  CHECK(csv.rfind("functional,density,m,lambda,F,lnlambda,lnabsF\n", 0) == 0);
}

TEST_CASE("full run on a gaussian passes every gate") {
  RunConfig cfg;
  cfg.functionals = {"ne", "ext(z=1)", "hartree", "tf", "vw"};
  cfg.densities = {"gaussian:alpha=1,n=1"};
  cfg.checks.assign(std::begin(all_checks), std::end(all_checks));
  cfg.pde_points = 60;
  cfg.box_count = 1;
  const Report report = run(cfg);
  CHECK(report.all_passed);
  CHECK(report.invariance.size() == 5);
  CHECK(report.pde_residuals.size() == 5);
  // vW at m = 1, ext at m = 2 and ne at m = 3 hit m = m0 and are skipped
  int skipped = 0;
  for (const auto& e : report.euler) skipped += e.skipped ? 1 : 0;
  CHECK(skipped == 3);
  // box check: 3 eligible integrands x 1 box x 2 lambdas + 2 skip markers
  int box_skipped = 0;
  for (const auto& e : report.box_invariance) box_skipped += e.skipped;
  CHECK(box_skipped == 2);
  CHECK(report.box_invariance.size() == 3 * 1 * 2 + 2);
  // forms: ne, tf, vw, ext plus the synthetic gradient entry
  CHECK(report.forms.size() == 5);
  // timings cover each executed check once
  CHECK(report.timings.size() == 7);
}

TEST_CASE("json reports are deterministic up to the volatile lines") {
  RunConfig cfg = quick_config();
  cfg.checks = {CheckKind::Homogeneity, CheckKind::Pde, CheckKind::Forms};
  const Report a = run(cfg);
  const Report b = run(cfg);
  CHECK(strip_volatile(to_json(a)) == strip_volatile(to_json(b)));
  // different seed changes sampled results
  RunConfig other = cfg;
  other.seed += 1;
  const Report c = run(other);
  CHECK(strip_volatile(to_json(a)) != strip_volatile(to_json(c)));
}

TEST_CASE("json document carries every top-level section") {
  RunConfig cfg = quick_config();
  const Report report = run(cfg);
  const std::string json = to_json(report);
  for (const char* key :
       {"\"version\"", "\"config\"", "\"homogeneity\"", "\"invariance\"",
        "\"euler\"", "\"representation\"", "\"pde_residuals\"",
        "\"box_invariance\"", "\"forms\"", "\"timings\"", "\"timestamp\"",
        "\"all_passed\""}) {
    INFO(key);
    CHECK(json.find(key) != std::string::npos);
  }
  // floats carry 17 significant digits
  CHECK(json.find("0.70710678118654746") != std::string::npos);
}

TEST_CASE("emit writes the configured files and surfaces path errors") {
  RunConfig cfg = quick_config();
  cfg.out_json = "test_report_out.json";
  cfg.out_csv = "test_report_out.csv";
  const Report report = run(cfg);
  emit(report);
  std::ifstream json(cfg.out_json);
  REQUIRE(json.good());
  std::ifstream csv(cfg.out_csv);
  REQUIRE(csv.good());
  std::remove(cfg.out_json.c_str());
  std::remove(cfg.out_csv.c_str());

  Report bad = report;
  bad.config.out_json = "/nonexistent_dir/report.json";
  try {
    emit(bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir/report.json") !=
          std::string::npos);
  }
}
