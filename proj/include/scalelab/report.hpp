// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scalelab/config.hpp"
#include "scalelab/scaling_analysis.hpp"
#include "scalelab/vec3.hpp"

namespace scalelab {

struct HomogeneityEntry {
  std::string functional;
  std::string density;
  double m = 0.0;
  double p_hat = 0.0;
  double declared_p = 0.0;
  double residual_rms = 0.0;
  bool pass = false;
  bool errored = false;
  std::string message;
};

struct InvarianceEntry {
  std::string functional;
  std::string density;
  double m0_hat = 0.0;
  double declared_m0 = 0.0;
  double q_hat = 0.0;
  double declared_q = 0.0;
  double k_hat = 0.0;
  double fit_residual = 0.0;
  double condition_residual = 0.0;
  bool degenerate = false;
  bool pass = false;
  bool errored = false;
  std::string message;
};

/// Shared by the euler and representation checks.
struct IdentityEntry {
  std::string functional;
  std::string density;
  double m = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  bool skipped = false; // m coincides with the invariance degree
  bool errored = false;
  std::string message;
};

struct PdeEntry {
  std::string equation_id;
  std::string functional;
  std::string density;
  double m0 = 0.0;
  int sample_points = 0;
  double max_rel_residual = 0.0;
  double mean_rel_residual = 0.0;
  std::string normalization;
  std::uint64_t seed = 0;
  bool pass = false;
  bool errored = false;
  std::string message;
};

struct BoxEntry {
  std::string functional;
  std::string density;
  Vec3 lo{}, hi{};
  double lambda = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  bool skipped = false; // integrand not box-eligible
  bool errored = false;
  std::string message;
};

struct FormEntry {
  std::string form; // equation id of the solution form
  std::string functional;
  std::string density;
  bool has_constant = false;
  double c_hat = 0.0;
  double expected_c = 0.0;
  double spread = 0.0;
  double max_rel_residual = 0.0;
  int sample_points = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  bool errored = false;
  std::string message;
};

/// Machine-readable outcome of one verification run.
struct Report {
  std::string version;
  RunConfig config;
  std::vector<HomogeneityEntry> homogeneity;
  std::vector<InvarianceEntry> invariance;
  std::vector<IdentityEntry> euler;
  std::vector<IdentityEntry> representation;
  std::vector<PdeEntry> pde_residuals;
  std::vector<BoxEntry> box_invariance;
  std::vector<FormEntry> forms;
  std::vector<SweepRow> sweep; // CSV payload of the lambda sweeps
  std::vector<std::pair<std::string, double>> timings; // seconds per check
  std::string timestamp;
  bool all_passed = false;
};

/// Execute the configured checks in declared order. Engine errors are
/// captured per entry; configuration problems raise ConfigError.
Report run(const RunConfig& cfg);

/// JSON document (stable layout, floats at 17 significant digits).
std::string to_json(const Report& report);

/// Lambda-sweep CSV: functional,density,m,lambda,F,lnlambda,lnabsF.
std::string to_csv(const Report& report);

/// Write the report files recorded in report.config (empty paths skip).
void emit(const Report& report);

/// 0 when every gate passed, 1 otherwise.
int exit_status(const Report& report);

} // namespace scalelab
