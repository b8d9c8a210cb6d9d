// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scalelab/quadrature.hpp"

namespace scalelab {

/// Verification engines the runner knows how to drive, in execution order.
enum class CheckKind {
  Homogeneity,
  Invariance,
  Euler,
  Representation,
  Pde,
  Box,
  Forms,
};

constexpr CheckKind all_checks[] = {
    CheckKind::Homogeneity, CheckKind::Invariance, CheckKind::Euler,
    CheckKind::Representation, CheckKind::Pde, CheckKind::Box,
    CheckKind::Forms,
};

std::string check_name(CheckKind kind);
CheckKind parse_check(std::string_view name);

/// Pass/fail gates. The defaults are the acceptance tolerances.
struct Thresholds {
  double homogeneity_p = 1e-6;
  double homogeneity_rms = 1e-8;
  double m0 = 1e-6;
  double q = 1e-6;
  double euler = 1e-6;
  double representation = 1e-6;
  double invariance_condition = 1e-6;
  double pde_max = 1e-8;
  double box = 1e-6;
  double form_spread = 1e-8;
  double form_residual = 1e-10;
};

/// Grid settings; r_max == 0 keeps automatic per-density extents.
struct QuadratureOptions {
  int radial_panels = 60;
  int radial_nodes = 8;
  int box_nodes = 32;
  double tail_tolerance = 1e-14;
  double r_max = 0.0;

  QuadratureSpec to_spec() const {
    QuadratureSpec spec;
    spec.radial.r_max = r_max;
    spec.radial.panels = radial_panels;
    spec.radial.nodes = radial_nodes;
    spec.box.nodes = box_nodes;
    spec.tail_tolerance = tail_tolerance;
    return spec;
  }
};

/// Full description of a verification run.
struct RunConfig {
  std::vector<std::string> functionals = {"ne", "ext(z=1)", "hartree", "tf",
                                          "vw"};
  std::vector<std::string> densities = {"gaussian:alpha=1,n=1",
                                        "slater:zeta=1,n=1"};
  std::vector<double> m_set = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> lambda_set = {0.5, 1.0 / M_SQRT2, M_SQRT2, 2.0};
  std::vector<CheckKind> checks;
  std::uint64_t seed = 20260810;
  int pde_points = 200;
  int box_count = 3;
  std::vector<double> box_lambdas = {0.5, 2.0};
  QuadratureOptions quadrature;
  Thresholds thresholds;
  std::string out_json;
  std::string out_csv;
};

/// Merge a key-value config file (see README for the schema) into cfg.
/// Unknown keys or malformed values raise ConfigError.
void load_config_file(RunConfig& cfg, const std::string& path);

/// SCALELAB_SEED overrides the configured seed when set.
void apply_env_overrides(RunConfig& cfg);

/// Comma/whitespace separated doubles, e.g. "0.5,0.7071,2".
std::vector<double> parse_number_list(std::string_view text);

/// Comma/whitespace separated check names.
std::vector<CheckKind> parse_check_list(std::string_view text);

} // namespace scalelab
