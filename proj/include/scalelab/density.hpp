// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scalelab/errors.hpp"
#include "scalelab/vec3.hpp"

namespace scalelab {

/// Exact differential data of a density at one point.
struct DensityData {
  double value = 0.0;
  Vec3 gradient{};
  double laplacian = 0.0;
};

/// One normalized Gaussian shell: weight * (alpha/pi)^{3/2} exp(-alpha|r-c|^2).
/// The weight equals the electron count carried by the term.
struct GaussianTerm {
  double weight = 1.0;
  double alpha = 1.0;
  Vec3 center{};
};

/// Analytic electron density. Values in electrons/bohr^3, lengths in bohr.
///
/// Families:
///   - GaussianMix: sum of normalized Gaussians (weights > 0).
///   - Slater: N * (zeta^3/pi) * exp(-2 zeta |r|).
///   - AnisotropicGaussian: w * prod_i (a_i/pi)^{1/2} exp(-a_i x_i^2).
class DensityModel {
public:
  enum class Kind { GaussianMix, Slater, AnisotropicGaussian };

  static DensityModel gaussian(double alpha, double n_electrons);
  static DensityModel gaussian_mix(std::vector<GaussianTerm> terms);
  static DensityModel slater(double zeta, double n_electrons);
  static DensityModel anisotropic_gaussian(Vec3 exponents, double weight);

  /// Parse the density mini-language shared by flags and config files:
  ///   gaussian:alpha=1.0,n=1.0
  ///   gaussian-mix:[w,alpha,cx,cy,cz;...]
  ///   slater:zeta=1.0,n=1.0
  ///   aniso:ax=1.0,ay=2.0,az=0.5,w=1.0
  static DensityModel parse(std::string_view spec);

  Kind kind() const;

  double value(const Vec3& r) const;
  Vec3 gradient(const Vec3& r) const;
  double laplacian(const Vec3& r) const;
  Mat3 hessian(const Vec3& r) const;
  DensityData evaluate(const Vec3& r) const;

  /// Exact full-space integral of the density.
  double analytic_norm() const;

  bool spherically_symmetric() const;
  Vec3 centroid() const;

  /// Canonical mini-language string for reports.
  std::string describe() const;

  const std::vector<GaussianTerm>* gaussian_terms() const;

private:
  struct SlaterData {
    double zeta;
    double n_electrons;
  };
  struct AnisoData {
    Vec3 exponents;
    double weight;
  };
  using Payload = std::variant<std::vector<GaussianTerm>, SlaterData, AnisoData>;

  explicit DensityModel(Payload payload) : payload_(std::move(payload)) {}

  Payload payload_;
};

/// Scaling strength lambda > 0 and degree m of n -> lambda^m n(lambda r).
struct ScalingParams {
  double lambda = 1.0;
  double m = 0.0;
};

/// A density under homogeneous coordinate scaling:
///   value(r)     = lambda^m     n(lambda r)
///   gradient(r)  = lambda^{m+1} grad n(lambda r)
///   laplacian(r) = lambda^{m+2} lap n(lambda r)
class ScaledDensity {
public:
  ScaledDensity(DensityModel base, ScalingParams scaling);

  double value(const Vec3& r) const;
  Vec3 gradient(const Vec3& r) const;
  double laplacian(const Vec3& r) const;
  Mat3 hessian(const Vec3& r) const;
  DensityData evaluate(const Vec3& r) const;

  double analytic_norm() const;
  bool spherically_symmetric() const { return base_.spherically_symmetric(); }
  Vec3 centroid() const { return base_.centroid() / scaling_.lambda; }
  std::string describe() const;

  const DensityModel& base() const { return base_; }
  const ScalingParams& scaling() const { return scaling_; }

private:
  DensityModel base_;
  ScalingParams scaling_;
};

ScaledDensity scale_density(const DensityModel& base, double lambda, double m);

/// Composition collapses analytically: scaling (l1, m) then (l2, m) is the
/// single scaling (l1*l2, m). The degrees must match.
ScaledDensity scale_density(const ScaledDensity& base, double lambda, double m);

/// Value-semantic handle over either a bare or a scaled density.
class Density {
public:
  Density(DensityModel model) : payload_(std::move(model)) {}
  Density(ScaledDensity scaled) : payload_(std::move(scaled)) {}

  double value(const Vec3& r) const;
  Vec3 gradient(const Vec3& r) const;
  double laplacian(const Vec3& r) const;
  Mat3 hessian(const Vec3& r) const;
  DensityData evaluate(const Vec3& r) const;

  double analytic_norm() const;
  bool spherically_symmetric() const;
  Vec3 centroid() const;
  std::string describe() const;

  /// Underlying unscaled model (the base for scaled densities).
  const DensityModel& model() const;
  bool scaled() const;
  ScalingParams scaling() const; // identity for bare densities

private:
  std::variant<DensityModel, ScaledDensity> payload_;
};

Density scale_density(const Density& base, double lambda, double m);

/// Residuals of the two lambda-derivative identities of scaled densities,
///   lambda d n/d lambda        = m n + r . grad n
///   lambda d (d_i n)/d lambda  = (m+1) d_i n + sum_j x_j d_j d_i n
/// with the lambda derivative taken by central differences of step h and the
/// right-hand sides evaluated analytically.
struct ScalingIdentityResiduals {
  double value_residual = 0.0;
  double gradient_residual = 0.0; // max over the three components
};

ScalingIdentityResiduals check_scaling_identities(const ScaledDensity& density,
                                                  const Vec3& r, double h);

} // namespace scalelab
