// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalelab/density.hpp"
#include "scalelab/quadrature.hpp"

namespace scalelab {

/// Thomas-Fermi constant (3/10)(3 pi^2)^{2/3} in hartree atomic units.
extern const double thomas_fermi_constant;

enum class FunctionalKind {
  NumberOfElectrons,
  ExternalCoulomb,
  Hartree,
  ThomasFermi,
  VonWeizsaecker,
};

/// One of the five density functionals, with its declared homogeneity
/// degree p(m) = q*m + k and invariance degree m0 = -k/q.
class FunctionalSpec {
public:
  static FunctionalSpec number_of_electrons();
  static FunctionalSpec external_coulomb(double z);
  static FunctionalSpec hartree();
  static FunctionalSpec thomas_fermi();
  static FunctionalSpec von_weizsaecker();

  /// Parse a CLI/config name: ne, ext, ext(z=...), hartree, tf, vw.
  static FunctionalSpec parse(std::string_view name);

  FunctionalKind kind() const { return kind_; }
  double z() const { return z_; }

  double declared_q() const { return q_; }
  double declared_k() const { return k_; }
  double declared_m0() const { return -k_ / q_; }
  double declared_p(double m) const { return q_ * m + k_; }

  std::string name() const;

private:
  FunctionalSpec(FunctionalKind kind, double z, double q, double k)
      : kind_(kind), z_(z), q_(q), k_(k) {}

  FunctionalKind kind_;
  double z_;
  double q_, k_;
};

/// Functional value in hartree. Spherically symmetric densities use the
/// radial path; others use box quadrature. Hartree requires the radial path.
double evaluate_energy(const FunctionalSpec& spec, const Density& density,
                       const QuadratureSpec& quad = {});

/// Hartree potential of a spherically symmetric density by shell integrals:
///   v_H(r) = 4 pi [ (1/r) \int_0^r n s^2 ds + \int_r^\infty n s ds ].
double hartree_potential(const Density& density, double r,
                         const QuadratureSpec& quad = {});

/// Analytic functional derivative dF/dn at a point.
double functional_derivative(const FunctionalSpec& spec, const Density& density,
                             const Vec3& r, const QuadratureSpec& quad = {});

/// Finite-difference functional derivative through a normalized Gaussian
/// bump b of the given width centered at r:
///   (F[n + eps b] - F[n - eps b]) / (2 eps \int b).
/// eps == 0 picks a safe step from the local density magnitude. The
/// difference integrand vanishes away from the bump, so it is integrated on
/// a bump-local grid; Hartree goes through Gaussian pair energies instead.
double fd_functional_derivative(const FunctionalSpec& spec,
                                const Density& density, const Vec3& r,
                                double eps = 0.0, double width = 0.015);

/// Closed-form Hartree energy of a (possibly signed) Gaussian mix via
/// two-center erf integrals. Oracle path, independent of the shell formula.
double hartree_energy_gaussian_pairs(std::span<const GaussianTerm> terms);

/// Direct 6D tensor-product box quadrature of the Hartree double integral
/// over [-halfwidth, halfwidth]^6 with staggered grids (nodes and nodes+3
/// per axis). Low-resolution sanity oracle; convergence is cusp-limited.
double hartree_energy_box6(const Density& density, int nodes, double halfwidth);

/// Gaussian-term representation of a density, when it has one (bare or
/// scaled isotropic Gaussian mixes).
std::optional<std::vector<GaussianTerm>> as_gaussian_terms(const Density& d);

// ---------------------------------------------------------------------------
// Energy densities with separated argument slots.

/// Frozen density data (n, grad n) and the explicit coordinate at one point.
struct OnePointArgs {
  double n = 0.0;
  Vec3 grad{};
  Vec3 r{};
};

/// Same for a two-point functional density f([n], r, r').
struct TwoPointArgs {
  double n_r = 0.0, n_rp = 0.0;
  Vec3 grad_r{}, grad_rp{};
  Vec3 r{}, rp{};
};

/// Evaluator bundle for a functional density f with explicit partials over
/// its density/gradient slots and the coordinate divergence taken at frozen
/// density arguments: div_r [r f] (+ div_r' [r' f] for two-point).
struct EnergyDensity {
  enum class Arity { OnePoint, TwoPoint };

  Arity arity = Arity::OnePoint;
  std::string name;
  bool depends_on_density = false;
  bool depends_on_gradient = false;
  bool depends_on_coordinates = false;

  // one-point slots
  std::function<double(const OnePointArgs&)> f;
  std::function<double(const OnePointArgs&)> df_dn;
  std::function<Vec3(const OnePointArgs&)> df_dgrad;
  std::function<double(const OnePointArgs&)> coord_divergence;

  // two-point slots
  std::function<double(const TwoPointArgs&)> f2;
  std::function<double(const TwoPointArgs&)> df2_dn_r;
  std::function<double(const TwoPointArgs&)> df2_dn_rp;
  std::function<Vec3(const TwoPointArgs&)> df2_dgrad_r;
  std::function<Vec3(const TwoPointArgs&)> df2_dgrad_rp;
  std::function<double(const TwoPointArgs&)> coord_divergence2; // both terms

  OnePointArgs args_at(const Density& density, const Vec3& r) const {
    return OnePointArgs{density.value(r), density.gradient(r), r};
  }
  TwoPointArgs args_at(const Density& density, const Vec3& r,
                       const Vec3& rp) const {
    return TwoPointArgs{density.value(r),    density.value(rp),
                        density.gradient(r), density.gradient(rp),
                        r,                   rp};
  }
};

/// Energy density of a functional; Hartree is the only two-point one.
EnergyDensity energy_density(const FunctionalSpec& spec);

/// Synthetic one-point density f = C n^p (density-only dependence).
EnergyDensity make_density_power_integrand(double coefficient, double exponent);

/// Synthetic one-point density f = |grad n|^p (gradient-only dependence).
EnergyDensity make_gradient_power_integrand(double exponent);

} // namespace scalelab
