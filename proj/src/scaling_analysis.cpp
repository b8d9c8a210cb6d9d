// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/scaling_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace scalelab {

namespace {

constexpr double k_value_floor = 1e-12;
constexpr double k_q_tolerance = 1e-8;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

LineFit least_squares_line(std::span<const double> x,
                           std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("least squares: degenerate abscissa set");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

int count_distinct(std::span<const double> values) {
  std::set<double> s(values.begin(), values.end());
  return static_cast<int>(s.size());
}

// Shared radial integrals of dF/dn against weights of n and r.grad n.
// All identity checks live on the radial path; they require a spherically
// symmetric density.
struct DerivativeIntegrals {
  double against_n = 0.0;         // \int dF/dn n
  double against_r_grad_n = 0.0;  // \int dF/dn (r . grad n)
  double against_abs_n = 0.0;     // \int |dF/dn| n
};

DerivativeIntegrals derivative_integrals(const FunctionalSpec& spec,
                                         const Density& density,
                                         const QuadratureSpec& quad) {
  if (!density.spherically_symmetric())
    throw UnsupportedPathError(
        "scaling-analysis checks use the radial path and need a spherically "
        "symmetric density");
  QuadratureSpec resolved = quad;
  if (resolved.radial.r_max <= 0.0)
    resolved.radial.r_max = auto_r_max(density, resolved.tail_tolerance);
  DerivativeIntegrals out;
  auto accumulate = [&](auto weight_of) {
    return integrate_radial(
        [&](double s) {
          const Vec3 p{s, 0, 0};
          const double dfdn = functional_derivative(spec, density, p, resolved);
          return weight_of(dfdn, p);
        },
        resolved.radial);
  };
  out.against_n = accumulate([&](double dfdn, const Vec3& p) {
    return dfdn * density.value(p);
  });
  out.against_r_grad_n = accumulate([&](double dfdn, const Vec3& p) {
    return dfdn * dot(p, density.gradient(p));
  });
  out.against_abs_n = accumulate([&](double dfdn, const Vec3& p) {
    return std::abs(dfdn) * density.value(p);
  });
  return out;
}

} // namespace

HomogeneityFit fit_homogeneity_degree(const FunctionalSpec& spec,
                                      const Density& density, double m,
                                      std::span<const double> lambdas,
                                      const QuadratureSpec& quad) {
  if (count_distinct(lambdas) < 3)
    throw FitError("homogeneity fit needs at least 3 distinct lambda values");
  for (double l : lambdas)
    if (!(l > 0.0)) throw FitError("homogeneity fit: lambdas must be > 0");

  HomogeneityFit fit;
  fit.m = m;
  fit.lambdas.assign(lambdas.begin(), lambdas.end());
  std::vector<double> x, y;
  for (double l : lambdas) {
    const double value =
        evaluate_energy(spec, scale_density(density, l, m), quad);
    fit.values.push_back(value);
    if (std::abs(value) < k_value_floor)
      throw FitError("homogeneity fit: |F| below the 1e-12 floor at lambda=" +
                     std::to_string(l));
    const int sign = value > 0.0 ? 1 : -1;
    if (fit.sign == 0)
      fit.sign = sign;
    else if (fit.sign != sign)
      throw FitError("homogeneity fit: F changes sign across the lambda sweep");
    x.push_back(std::log(l));
    y.push_back(std::log(std::abs(value)));
    fit.log_values.emplace_back(x.back(), y.back());
  }
  const LineFit line = least_squares_line(x, y);
  fit.p_hat = line.slope;
  fit.intercept = line.intercept;
  fit.residual_rms = line.residual_rms;
  return fit;
}

InvarianceResult affine_invariance_fit(std::span<const double> m_set,
                                       std::span<const double> p_hats) {
  if (m_set.size() != p_hats.size())
    throw FitError("invariance fit: mismatched m/p arrays");
  if (count_distinct(m_set) < 2)
    throw FitError("invariance fit needs at least 2 distinct m values");
  InvarianceResult result;
  result.m_set.assign(m_set.begin(), m_set.end());
  result.p_hats.assign(p_hats.begin(), p_hats.end());
  const LineFit line = least_squares_line(m_set, p_hats);
  result.q_hat = line.slope;
  result.k_hat = line.intercept;
  result.fit_residual = line.residual_rms;
  if (std::abs(result.q_hat) < k_q_tolerance) {
    result.degenerate = true;
    result.m0_hat = std::numeric_limits<double>::quiet_NaN();
  } else {
    result.m0_hat = -result.k_hat / result.q_hat;
  }
  return result;
}

InvarianceResult fit_invariance_degree(const FunctionalSpec& spec,
                                       const Density& density,
                                       std::span<const double> m_set,
                                       std::span<const double> lambdas,
                                       const QuadratureSpec& quad) {
  std::vector<double> p_hats;
  p_hats.reserve(m_set.size());
  for (double m : m_set)
    p_hats.push_back(
        fit_homogeneity_degree(spec, density, m, lambdas, quad).p_hat);
  return affine_invariance_fit(m_set, p_hats);
}

double check_euler_relation(const FunctionalSpec& spec, const Density& density,
                            double m, const QuadratureSpec& quad) {
  const double p = spec.declared_p(m);
  if (std::abs(p) < 1e-9)
    throw FitError("euler relation undefined at m = m0 (p(m) = 0); use "
                   "check_invariance_condition instead");
  const double energy = evaluate_energy(spec, density, quad);
  const DerivativeIntegrals ints = derivative_integrals(spec, density, quad);
  const double rhs = (m * ints.against_n + ints.against_r_grad_n) / p;
  return std::abs(energy - rhs) / std::abs(energy);
}

double check_invariance_condition(const FunctionalSpec& spec,
                                  const Density& density,
                                  const QuadratureSpec& quad) {
  const double m0 = spec.declared_m0();
  const DerivativeIntegrals ints = derivative_integrals(spec, density, quad);
  return std::abs(m0 * ints.against_n + ints.against_r_grad_n) /
         ints.against_abs_n;
}

double check_integral_representation(const FunctionalSpec& spec,
                                     const Density& density, double m,
                                     const QuadratureSpec& quad) {
  const double p = spec.declared_p(m);
  if (std::abs(p) < 1e-9)
    throw FitError("integral representation undefined at m = m0 (p(m) = 0)");
  const double energy = evaluate_energy(spec, density, quad);
  const DerivativeIntegrals ints = derivative_integrals(spec, density, quad);
  const double rhs = (m - spec.declared_m0()) / p * ints.against_n;
  return std::abs(energy - rhs) / std::abs(energy);
}

} // namespace scalelab
