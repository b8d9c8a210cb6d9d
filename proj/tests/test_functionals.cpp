// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "scalelab/functionals.hpp"
#include "scalelab/sampling.hpp"

using namespace scalelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Density gauss{DensityModel::gaussian(1.0, 1.0)};
const Density slater{DensityModel::slater(1.0, 1.0)};

// Closed-form oracles for the unit-normalized gaussian family:
//   T_vW = (3/4) alpha N        E_H = N^2 sqrt(alpha/(2 pi))
//   E_ext = -2 Z N sqrt(alpha/pi)
//   T_TF = c_TF N^{5/3} (alpha/pi) (3/5)^{3/2}
double oracle_t_vw(double alpha, double n) { return 0.75 * alpha * n; }
double oracle_e_h(double alpha, double n) {
  return n * n * std::sqrt(alpha / (2.0 * M_PI));
}
double oracle_e_ext(double z, double alpha, double n) {
  return -2.0 * z * n * std::sqrt(alpha / M_PI);
}
double oracle_t_tf(double alpha, double n) {
  return thomas_fermi_constant * std::pow(n, 5.0 / 3.0) * (alpha / M_PI) *
         std::pow(0.6, 1.5);
}

} // namespace

TEST_CASE("thomas-fermi constant") {
  CHECK_THAT(thomas_fermi_constant, WithinRel(2.871234000188191, 1e-15));
}

TEST_CASE("functional names parse and round trip") {
  for (const char* name : {"ne", "hartree", "tf", "vw", "ext(z=2.5)"}) {
    const FunctionalSpec spec = FunctionalSpec::parse(name);
    CHECK(spec.name() == name);
  }
  CHECK(FunctionalSpec::parse("ext").z() == 1.0);
  CHECK_THROWS_AS(FunctionalSpec::parse("bogus"), ConfigError);
  CHECK_THROWS_AS(FunctionalSpec::parse("ext(z=frog)"), ConfigError);
  CHECK_THROWS_AS(FunctionalSpec::external_coulomb(-1.0), ConfigError);
}

TEST_CASE("declared degrees match the known table") {
  auto check = [](const FunctionalSpec& s, double q, double k, double m0) {
    CHECK(s.declared_q() == q);
    CHECK(s.declared_k() == k);
    CHECK_THAT(s.declared_m0(), WithinRel(m0, 1e-15));
    CHECK_THAT(s.declared_p(2.0), WithinRel(2.0 * q + k, 1e-15));
  };
  check(FunctionalSpec::number_of_electrons(), 1.0, -3.0, 3.0);
  check(FunctionalSpec::external_coulomb(1.0), 1.0, -2.0, 2.0);
  check(FunctionalSpec::hartree(), 2.0, -5.0, 2.5);
  check(FunctionalSpec::von_weizsaecker(), 1.0, -1.0, 1.0);
  check(FunctionalSpec::thomas_fermi(), 5.0 / 3.0, -3.0, 1.8);
}

TEST_CASE("energies against closed-form oracles, gaussian family") {
  const QuadratureSpec quad;
  CHECK_THAT(evaluate_energy(FunctionalSpec::number_of_electrons(),
                             Density{DensityModel::gaussian(1.0, 2.5)}, quad),
             WithinRel(2.5, 1e-12));
  CHECK_THAT(evaluate_energy(FunctionalSpec::von_weizsaecker(), gauss, quad),
             WithinRel(0.75, 1e-12));
  CHECK_THAT(evaluate_energy(FunctionalSpec::thomas_fermi(), gauss, quad),
             WithinRel(0.42476193543755475, 1e-12));
  CHECK_THAT(evaluate_energy(FunctionalSpec::hartree(), gauss, quad),
             WithinRel(0.3989422804014327, 1e-10));
  CHECK_THAT(evaluate_energy(FunctionalSpec::external_coulomb(1.0), gauss,
                             quad),
             WithinRel(-1.1283791670955126, 1e-12));

  // off-unit parameters against the same forms
  const Density g{DensityModel::gaussian(2.3, 1.7)};
  CHECK_THAT(evaluate_energy(FunctionalSpec::von_weizsaecker(), g, quad),
             WithinRel(oracle_t_vw(2.3, 1.7), 1e-12));
  CHECK_THAT(evaluate_energy(FunctionalSpec::thomas_fermi(), g, quad),
             WithinRel(oracle_t_tf(2.3, 1.7), 1e-12));
  CHECK_THAT(evaluate_energy(FunctionalSpec::hartree(), g, quad),
             WithinRel(oracle_e_h(2.3, 1.7), 1e-10));
  CHECK_THAT(evaluate_energy(FunctionalSpec::external_coulomb(1.5), g, quad),
             WithinRel(oracle_e_ext(1.5, 2.3, 1.7), 1e-12));
}

TEST_CASE("energies against closed-form oracles, slater family") {
  const QuadratureSpec quad;
  // T_vW = zeta^2 N / 2, E_H = (5/16) zeta N^2, E_ext = -Z N zeta,
  // T_TF = c_TF N^{5/3} zeta^2 (27/125) pi^{-2/3}
  CHECK_THAT(evaluate_energy(FunctionalSpec::von_weizsaecker(), slater, quad),
             WithinRel(0.5, 1e-10));
  CHECK_THAT(evaluate_energy(FunctionalSpec::hartree(), slater, quad),
             WithinRel(0.3125, 1e-10));
  CHECK_THAT(evaluate_energy(FunctionalSpec::external_coulomb(2.0), slater,
                             quad),
             WithinRel(-2.0, 1e-10));
  CHECK_THAT(evaluate_energy(FunctionalSpec::thomas_fermi(), slater, quad),
             WithinRel(0.28912729348881216, 1e-10));
  const Density s2{DensityModel::slater(3.1, 1.0)};
  CHECK_THAT(evaluate_energy(FunctionalSpec::hartree(), s2, quad),
             WithinRel(0.96875, 1e-10));
}

TEST_CASE("degree law under scaling") {
  const QuadratureSpec quad;
  const std::vector<FunctionalSpec> specs = {
      FunctionalSpec::number_of_electrons(), FunctionalSpec::external_coulomb(1.0),
      FunctionalSpec::hartree(), FunctionalSpec::thomas_fermi(),
      FunctionalSpec::von_weizsaecker()};
  const std::vector<Density> densities = {gauss, slater};
  const double lambdas[] = {0.5, 1.0 / M_SQRT2, M_SQRT2, 2.0};
  for (const auto& spec : specs) {
    const bool hartree = spec.kind() == FunctionalKind::Hartree;
    for (const auto& d : densities) {
      const double base = evaluate_energy(spec, d, quad);
      for (double m : {0.0, 1.0, 2.0, 3.0}) {
        for (double lambda : lambdas) {
          const double scaled =
              evaluate_energy(spec, scale_density(d, lambda, m), quad);
          const double expected =
              std::pow(lambda, spec.declared_p(m)) * base;
          REQUIRE_THAT(scaled, WithinRel(expected, hartree ? 1e-6 : 1e-8));
        }
      }
    }
  }
}

TEST_CASE("degree law on the anisotropic density via the box path") {
  QuadratureSpec quad;
  quad.box.nodes = 24; // the lambda sweep stretches the box extents
  quad.box.panels = 3;
  const Density aniso{DensityModel::anisotropic_gaussian({1.0, 2.0, 0.5}, 1.0)};
  for (const auto& spec :
       {FunctionalSpec::number_of_electrons(), FunctionalSpec::thomas_fermi(),
        FunctionalSpec::von_weizsaecker()}) {
    const double base = evaluate_energy(spec, aniso, quad);
    for (double lambda : {0.5, 2.0}) {
      const double scaled =
          evaluate_energy(spec, scale_density(aniso, lambda, 1.5), quad);
      REQUIRE_THAT(scaled,
                   WithinRel(std::pow(lambda, spec.declared_p(1.5)) * base,
                             1e-8));
    }
  }
}

TEST_CASE("hartree potential matches erf(sqrt(alpha) r)/r") {
  const QuadratureSpec quad;
  CHECK_THAT(hartree_potential(gauss, 1.0, quad),
             WithinRel(0.8427007929497149, 1e-11));
  CHECK_THAT(hartree_potential(gauss, 0.25, quad),
             WithinRel(std::erf(0.25) / 0.25, 1e-11));
  // far field: v_H -> N / r
  CHECK_THAT(hartree_potential(gauss, 7.0, quad), WithinRel(1.0 / 7.0, 1e-11));
}

TEST_CASE("functional derivatives against per-family closed forms") {
  const QuadratureSpec quad;
  const Vec3 p{0.7, -0.4, 0.2};
  CHECK(functional_derivative(FunctionalSpec::number_of_electrons(), gauss, p,
                              quad) == 1.0);
  CHECK_THAT(functional_derivative(FunctionalSpec::external_coulomb(2.0),
                                   gauss, p, quad),
             WithinRel(-2.0 / norm(p), 1e-14));
  CHECK_THAT(functional_derivative(FunctionalSpec::thomas_fermi(), gauss,
                                   {0, 0, 0}, quad),
             WithinRel(1.5232369463448885, 1e-12));
  // vW on the gaussian: (3/2) alpha - alpha^2 r^2 / 2
  CHECK_THAT(functional_derivative(FunctionalSpec::von_weizsaecker(), gauss, p,
                                   quad),
             WithinRel(1.5 - 0.5 * norm2(p), 1e-12));
  // vW on the slater: zeta / r - zeta^2 / 2
  CHECK_THAT(functional_derivative(FunctionalSpec::von_weizsaecker(), slater,
                                   p, quad),
             WithinRel(1.0 / norm(p) - 0.5, 1e-12));
  // Hartree: v_H
  CHECK_THAT(functional_derivative(FunctionalSpec::hartree(), gauss,
                                   {1, 0, 0}, quad),
             WithinRel(0.8427007929497149, 1e-11));
  CHECK_THROWS_AS(functional_derivative(FunctionalSpec::external_coulomb(1.0),
                                        gauss, {0, 0, 0}, quad),
                  SingularPointError);
}

TEST_CASE("bump oracle agrees with analytic derivatives") {
  const QuadratureSpec quad;
  PointSampler sampler(101);
  const std::vector<FunctionalSpec> specs = {
      FunctionalSpec::number_of_electrons(),
      FunctionalSpec::external_coulomb(1.0), FunctionalSpec::hartree(),
      FunctionalSpec::thomas_fermi(), FunctionalSpec::von_weizsaecker()};
  for (const auto& spec : specs) {
    for (int i = 0; i < 6; ++i) {
      // stay inside r in [0.3, 1.5]: clear of the ext origin singularity and
      // of the vW derivative zero crossing at r = sqrt(3)
      Vec3 p;
      do {
        p = sampler.point_in_box({-1, -1, -1}, {1, 1, 1});
      } while (norm(p) < 0.3 || norm(p) > 1.5);
      const double fd = fd_functional_derivative(spec, gauss, p);
      const double exact = functional_derivative(spec, gauss, p, quad);
      REQUIRE_THAT(fd, WithinRel(exact, 1e-3));
    }
  }
}

TEST_CASE("bump oracle is 1 for the electron count up to rounding") {
  // linear functional: the difference quotient cancels exactly; what is left
  // is the float rounding of n +- eps b at eps b / n ~ 1e-4
  const double fd = fd_functional_derivative(
      FunctionalSpec::number_of_electrons(), gauss, {0.4, 0.1, -0.3});
  CHECK_THAT(fd, WithinRel(1.0, 1e-9));
}

TEST_CASE("hartree bump at |r| = 1 with width 0.05 meets the stated bound") {
  const double fd = fd_functional_derivative(FunctionalSpec::hartree(), gauss,
                                             {1, 0, 0}, 0.0, 0.05);
  CHECK_THAT(fd, WithinRel(0.8427007929497149, 1e-3));
}

TEST_CASE("bump oracle works on the slater density for one-point functionals") {
  const QuadratureSpec quad;
  const Vec3 p{0.8, 0.3, -0.2};
  const double fd =
      fd_functional_derivative(FunctionalSpec::thomas_fermi(), slater, p);
  CHECK_THAT(fd,
             WithinRel(functional_derivative(FunctionalSpec::thomas_fermi(),
                                             slater, p, quad),
                       1e-3));
}

TEST_CASE("bump oracle error paths") {
  // oversized eps drives the density negative
  CHECK_THROWS_AS(fd_functional_derivative(FunctionalSpec::thomas_fermi(),
                                           gauss, {1, 0, 0}, 1.0, 0.02),
                  PerturbationError);
  // the hartree oracle path needs a gaussian-mix density
  CHECK_THROWS_AS(fd_functional_derivative(FunctionalSpec::hartree(), slater,
                                           {1, 0, 0}),
                  UnsupportedPathError);
  CHECK_THROWS_AS(fd_functional_derivative(FunctionalSpec::hartree(), gauss,
                                           {1, 0, 0}, 1.0, 0.02),
                  PerturbationError);
}

TEST_CASE("gaussian pair formula matches the radial hartree energy") {
  const QuadratureSpec quad;
  const auto mix = DensityModel::gaussian_mix(
      {{1.0, 1.0, {0, 0, 0}}, {0.6, 3.0, {0, 0, 0}}});
  const auto* terms = mix.gaussian_terms();
  REQUIRE(terms != nullptr);
  CHECK_THAT(hartree_energy_gaussian_pairs(*terms),
             WithinRel(evaluate_energy(FunctionalSpec::hartree(),
                                       Density{mix}, quad),
                       1e-10));
  // scaled densities flatten to transformed gaussian terms
  const Density scaled{scale_density(mix, 1.7, 2.0)};
  const auto flattened = as_gaussian_terms(scaled);
  REQUIRE(flattened.has_value());
  CHECK_THAT(hartree_energy_gaussian_pairs(*flattened),
             WithinRel(evaluate_energy(FunctionalSpec::hartree(), scaled, quad),
                       1e-10));
}

TEST_CASE("radial hartree agrees with the direct 6D box quadrature") {
  const QuadratureSpec quad;
  const double radial = evaluate_energy(FunctionalSpec::hartree(), gauss, quad);
  const double box6 = hartree_energy_box6(gauss, 24, 4.5);
  CHECK_THAT(box6, WithinAbs(radial, 1e-2));
}

TEST_CASE("hartree radial path rejects non-spherical densities") {
  const QuadratureSpec quad;
  const Density aniso{DensityModel::anisotropic_gaussian({1.0, 2.0, 0.5}, 1.0)};
  CHECK_THROWS_AS(evaluate_energy(FunctionalSpec::hartree(), aniso, quad),
                  UnsupportedPathError);
}

TEST_CASE("energy density bundles: values and symmetry") {
  const EnergyDensity tf = energy_density(FunctionalSpec::thomas_fermi());
  CHECK_THAT(tf.f({1.0, {}, {}}), WithinRel(2.871234000188191, 1e-14));

  const EnergyDensity vw = energy_density(FunctionalSpec::von_weizsaecker());
  CHECK(vw.f({0.5, {0, 0, 0}, {}}) == 0.0);

  const EnergyDensity h = energy_density(FunctionalSpec::hartree());
  CHECK(h.arity == EnergyDensity::Arity::TwoPoint);
  const TwoPointArgs a{0.3, 0.7, {}, {}, {0.2, 0.1, -0.5}, {1.0, -0.3, 0.4}};
  const TwoPointArgs swapped{0.7, 0.3, {}, {}, {1.0, -0.3, 0.4},
                             {0.2, 0.1, -0.5}};
  CHECK_THAT(h.f2(a), WithinRel(h.f2(swapped), 1e-14));
  CHECK_THROWS_AS(
      h.f2(TwoPointArgs{1, 1, {}, {}, {1, 2, 3}, {1, 2, 3}}),
      SingularPointError);

  const EnergyDensity ext = energy_density(FunctionalSpec::external_coulomb(1.0));
  CHECK_THROWS_AS(ext.f({1.0, {}, {0, 0, 0}}), SingularPointError);
}

TEST_CASE("energy density coordinate divergences: hand-derived factors") {
  // external: div_r[r f] at frozen density equals 2 f
  const EnergyDensity ext =
      energy_density(FunctionalSpec::external_coulomb(1.7));
  const OnePointArgs a{0.23, {0.1, 0.2, 0.3}, {0.5, -0.8, 1.1}};
  CHECK_THAT(ext.coord_divergence(a), WithinRel(2.0 * ext.f(a), 1e-14));
  // hartree: both divergence terms together equal 5 f
  const EnergyDensity h = energy_density(FunctionalSpec::hartree());
  const TwoPointArgs t{0.3, 0.7, {}, {}, {0.2, 0.1, -0.5}, {1.0, -0.3, 0.4}};
  CHECK_THAT(h.coord_divergence2(t), WithinRel(5.0 * h.f2(t), 1e-14));
}

TEST_CASE("energy density slot partials match finite differences") {
  PointSampler sampler(71);
  const double h = 1e-6;
  const std::vector<FunctionalSpec> one_point = {
      FunctionalSpec::number_of_electrons(),
      FunctionalSpec::external_coulomb(1.3), FunctionalSpec::thomas_fermi(),
      FunctionalSpec::von_weizsaecker()};
  for (const auto& spec : one_point) {
    const EnergyDensity ed = energy_density(spec);
    for (int i = 0; i < 10; ++i) {
      OnePointArgs a;
      a.n = sampler.uniform(0.05, 0.5);
      a.grad = sampler.point_in_box({-1, -1, -1}, {1, 1, 1});
      do {
        a.r = sampler.point_in_box({-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5});
      } while (norm(a.r) < 0.2);

      OnePointArgs np = a, nm = a;
      np.n += h;
      nm.n -= h;
      REQUIRE_THAT(ed.df_dn(a),
                   WithinAbs((ed.f(np) - ed.f(nm)) / (2 * h), 1e-6));

      const Vec3 dg = ed.df_dgrad(a);
      for (int ax = 0; ax < 3; ++ax) {
        OnePointArgs gp = a, gm = a;
        gp.grad[ax] += h;
        gm.grad[ax] -= h;
        REQUIRE_THAT(dg[ax],
                     WithinAbs((ed.f(gp) - ed.f(gm)) / (2 * h), 1e-6));
      }

      // div_r[r f] = 3 f + sum_i x_i df/dx_i at frozen density slots
      double div = 3.0 * ed.f(a);
      for (int ax = 0; ax < 3; ++ax) {
        OnePointArgs rp = a, rm = a;
        rp.r[ax] += h;
        rm.r[ax] -= h;
        div += a.r[ax] * (ed.f(rp) - ed.f(rm)) / (2 * h);
      }
      REQUIRE_THAT(ed.coord_divergence(a), WithinAbs(div, 1e-6));
    }
  }

  const EnergyDensity hd = energy_density(FunctionalSpec::hartree());
  for (int i = 0; i < 10; ++i) {
    TwoPointArgs a;
    a.n_r = sampler.uniform(0.05, 0.5);
    a.n_rp = sampler.uniform(0.05, 0.5);
    a.r = sampler.point_in_box({-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5});
    do {
      a.rp = sampler.point_in_box({-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5});
    } while (norm(a.r - a.rp) < 0.3);

    TwoPointArgs np = a, nm = a;
    np.n_r += h;
    nm.n_r -= h;
    REQUIRE_THAT(hd.df2_dn_r(a),
                 WithinAbs((hd.f2(np) - hd.f2(nm)) / (2 * h), 1e-6));
    np = a;
    nm = a;
    np.n_rp += h;
    nm.n_rp -= h;
    REQUIRE_THAT(hd.df2_dn_rp(a),
                 WithinAbs((hd.f2(np) - hd.f2(nm)) / (2 * h), 1e-6));

    double div = 6.0 * hd.f2(a);
    for (int ax = 0; ax < 3; ++ax) {
      TwoPointArgs rp = a, rm = a;
      rp.r[ax] += h;
      rm.r[ax] -= h;
      div += a.r[ax] * (hd.f2(rp) - hd.f2(rm)) / (2 * h);
      rp = a;
      rm = a;
      rp.rp[ax] += h;
      rm.rp[ax] -= h;
      div += a.rp[ax] * (hd.f2(rp) - hd.f2(rm)) / (2 * h);
    }
    REQUIRE_THAT(hd.coord_divergence2(a), WithinAbs(div, 1e-6));
  }
}
