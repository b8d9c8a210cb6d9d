// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: runs the verification engines described by flags
// and/or a config file and writes JSON/CSV reports.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalelab/report.hpp"
#include "scalelab/version.hpp"

namespace {

struct CliOptions {
  std::vector<std::string> functionals;
  std::vector<std::string> densities;
  std::string m_list;
  std::string lambda_list;
  std::string checks_list;
  std::string config_path;
  std::string out_json;
  std::string out_csv;
  long long seed = -1;
  int pde_points = 0;
  int box_count = 0;
  std::string box_lambda_list;
  int radial_panels = 0;
  int radial_nodes = 0;
  int box_nodes = 0;
  double tail_tolerance = 0.0;
  double r_max = -1.0;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--functional,--functionals", opt.functionals,
                  "functional name(s): ne, ext(z=...), hartree, tf, vw");
  cmd->add_option("--density,--densities", opt.densities,
                  "density spec(s), e.g. gaussian:alpha=1,n=1");
  cmd->add_option("--m", opt.m_list, "comma-separated degrees m");
  cmd->add_option("--lambdas", opt.lambda_list,
                  "comma-separated scaling strengths lambda");
  cmd->add_option("--checks", opt.checks_list,
                  "override the check set run by this subcommand");
  cmd->add_option("--config", opt.config_path,
                  "config file (sections [run], [quadrature], [thresholds], "
                  "[output]); flags override the file");
  cmd->add_option("--out", opt.out_json, "JSON report path");
  cmd->add_option("--csv", opt.out_csv, "lambda-sweep CSV path");
  cmd->add_option("--seed", opt.seed, "RNG seed for sampled checks");
  cmd->add_option("--pde-points", opt.pde_points,
                  "sample points per residual check");
  cmd->add_option("--box-count", opt.box_count,
                  "random boxes per box-invariance case");
  cmd->add_option("--box-lambdas", opt.box_lambda_list,
                  "comma-separated lambdas for the box check");
  cmd->add_option("--radial-panels", opt.radial_panels,
                  "radial quadrature panels");
  cmd->add_option("--radial-nodes", opt.radial_nodes,
                  "Gauss nodes per radial panel");
  cmd->add_option("--box-nodes", opt.box_nodes,
                  "Gauss nodes per box axis");
  cmd->add_option("--tail-tol", opt.tail_tolerance,
                  "density tail tolerance for automatic extents");
  cmd->add_option("--rmax", opt.r_max,
                  "fixed radial extent (default: automatic)");
}

scalelab::RunConfig build_config(const CliOptions& opt,
                                 const std::vector<scalelab::CheckKind>& checks) {
  scalelab::RunConfig cfg;
  cfg.checks = checks;
  if (!opt.config_path.empty())
    scalelab::load_config_file(cfg, opt.config_path);

  // flags override the file
  if (!opt.functionals.empty()) {
    cfg.functionals.clear();
    for (const std::string& f : opt.functionals) {
      // allow comma-joined lists inside one flag (names carry no commas)
      std::size_t pos = 0;
      while (pos <= f.size()) {
        const std::size_t next = f.find(',', pos);
        const std::string item = f.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!item.empty()) cfg.functionals.push_back(item);
        if (next == std::string::npos) break;
        pos = next + 1;
      }
    }
  }
  if (!opt.densities.empty()) cfg.densities = opt.densities;
  if (!opt.m_list.empty()) cfg.m_set = scalelab::parse_number_list(opt.m_list);
  if (!opt.lambda_list.empty())
    cfg.lambda_set = scalelab::parse_number_list(opt.lambda_list);
  if (!opt.checks_list.empty())
    cfg.checks = scalelab::parse_check_list(opt.checks_list);
  if (!opt.out_json.empty()) cfg.out_json = opt.out_json;
  if (!opt.out_csv.empty()) cfg.out_csv = opt.out_csv;
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.pde_points > 0) cfg.pde_points = opt.pde_points;
  if (opt.box_count > 0) cfg.box_count = opt.box_count;
  if (!opt.box_lambda_list.empty())
    cfg.box_lambdas = scalelab::parse_number_list(opt.box_lambda_list);
  if (opt.radial_panels > 0) cfg.quadrature.radial_panels = opt.radial_panels;
  if (opt.radial_nodes > 0) cfg.quadrature.radial_nodes = opt.radial_nodes;
  if (opt.box_nodes > 0) cfg.quadrature.box_nodes = opt.box_nodes;
  if (opt.tail_tolerance > 0.0)
    cfg.quadrature.tail_tolerance = opt.tail_tolerance;
  if (opt.r_max >= 0.0) cfg.quadrature.r_max = opt.r_max;

  scalelab::apply_env_overrides(cfg);
  return cfg;
}

void print_summary(const scalelab::Report& report) {
  auto count = [](const auto& entries, int& pass, int& fail) {
    for (const auto& e : entries) (e.pass && !e.errored ? pass : fail) += 1;
  };
  int pass = 0, fail = 0;
  count(report.homogeneity, pass, fail);
  count(report.invariance, pass, fail);
  count(report.euler, pass, fail);
  count(report.representation, pass, fail);
  count(report.pde_residuals, pass, fail);
  count(report.box_invariance, pass, fail);
  count(report.forms, pass, fail);
  std::printf("scalelab %s: %d gate(s) passed, %d failed -> %s\n",
              report.version.c_str(), pass, fail,
              report.all_passed ? "PASS" : "FAIL");
  if (!report.config.out_json.empty())
    std::printf("report: %s\n", report.config.out_json.c_str());
  if (!report.config.out_csv.empty())
    std::printf("sweeps: %s\n", report.config.out_csv.c_str());
}

} // namespace

int main(int argc, char** argv) {
  using scalelab::CheckKind;

  CLI::App app{"scalelab: scaling/homogeneity verification of density "
               "functionals on analytic densities"};
  app.set_version_flag("--version", std::string(scalelab::version));
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    std::vector<CheckKind> checks;
  };
  const std::vector<Sub> subs = {
      {"homogeneity", "fit homogeneity degrees p(m)",
       {CheckKind::Homogeneity}},
      {"invariance", "fit invariance degrees m0 and test the invariance "
                     "condition",
       {CheckKind::Invariance}},
      {"representation", "verify the Euler relation and the integral "
                         "representation",
       {CheckKind::Euler, CheckKind::Representation}},
      {"pde-residuals", "pointwise residuals of the local-invariance PDEs",
       {CheckKind::Pde}},
      {"box-invariance", "finite-box invariance under scaling",
       {CheckKind::Box}},
      {"forms", "general solution forms of the local-invariance equations",
       {CheckKind::Forms}},
      {"all", "run every check",
       {CheckKind::Homogeneity, CheckKind::Invariance, CheckKind::Euler,
        CheckKind::Representation, CheckKind::Pde, CheckKind::Box,
        CheckKind::Forms}},
  };

  CliOptions opt;
  std::vector<CheckKind> selected;
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common_flags(cmd, opt);
    cmd->callback([&selected, &sub] { selected = sub.checks; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const scalelab::RunConfig cfg = build_config(opt, selected);
    const scalelab::Report report = scalelab::run(cfg);
    scalelab::emit(report);
    print_summary(report);
    return scalelab::exit_status(report);
  } catch (const scalelab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
