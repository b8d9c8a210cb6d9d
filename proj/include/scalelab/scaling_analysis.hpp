// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalelab/density.hpp"
#include "scalelab/functionals.hpp"
#include "scalelab/quadrature.hpp"

namespace scalelab {

/// Least-squares recovery of the homogeneity degree p(m) from a lambda sweep
/// of F[n_{lambda m}] in log-log space.
struct HomogeneityFit {
  double m = 0.0;
  std::vector<double> lambdas;
  std::vector<double> values;                        // F[n_{lambda m}]
  std::vector<std::pair<double, double>> log_values; // (ln lambda, ln |F|)
  double p_hat = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  int sign = 0; // common sign of F across the sweep
};

/// Affine fit p(m) = q m + k over per-m homogeneity slopes, with the
/// recovered invariance degree m0 = -k/q.
struct InvarianceResult {
  std::vector<double> m_set;
  std::vector<double> p_hats;
  double q_hat = 0.0;
  double k_hat = 0.0;
  double m0_hat = 0.0;
  double fit_residual = 0.0;
  bool degenerate = false; // |q_hat| below tolerance; no finite m0
};

/// Fit ln|F[n_{lambda m}]| against ln lambda. Requires >= 3 distinct lambdas,
/// |F| above 1e-12 everywhere, and a constant sign across the sweep.
HomogeneityFit fit_homogeneity_degree(const FunctionalSpec& spec,
                                      const Density& density, double m,
                                      std::span<const double> lambdas,
                                      const QuadratureSpec& quad = {});

/// Homogeneity fits over m_set followed by the affine degree fit.
InvarianceResult fit_invariance_degree(const FunctionalSpec& spec,
                                       const Density& density,
                                       std::span<const double> m_set,
                                       std::span<const double> lambdas,
                                       const QuadratureSpec& quad = {});

/// Affine fit alone, for callers that already have per-m slopes.
InvarianceResult affine_invariance_fit(std::span<const double> m_set,
                                       std::span<const double> p_hats);

/// Relative error of the Euler-style representation
///   F = (1/p(m)) \int dF/dn (m n + r . grad n).
/// Requires p(m) != 0; directs callers to the invariance condition otherwise.
double check_euler_relation(const FunctionalSpec& spec, const Density& density,
                            double m, const QuadratureSpec& quad = {});

/// Normalized residual of the invariance condition
///   \int dF/dn (m0 n + r . grad n) = 0,
/// normalized by \int |dF/dn| n.
double check_invariance_condition(const FunctionalSpec& spec,
                                  const Density& density,
                                  const QuadratureSpec& quad = {});

/// Relative error of the representation
///   F = ((m - m0)/p(m)) \int dF/dn n.
double check_integral_representation(const FunctionalSpec& spec,
                                     const Density& density, double m,
                                     const QuadratureSpec& quad = {});

/// One (m, lambda) sample of a sweep, as emitted to CSV.
struct SweepRow {
  std::string functional;
  std::string density;
  double m = 0.0;
  double lambda = 0.0;
  double value = 0.0; // F[n_{lambda m}]
  double ln_lambda = 0.0;
  double ln_abs_value = 0.0;
};

} // namespace scalelab
