// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "scalelab/density.hpp"
#include "scalelab/quadrature.hpp"

using namespace scalelab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  // 3-node rule: exact through degree 5
  const Rule1D& rule = gauss_legendre(3);
  double sum_x4 = 0.0, sum_x5 = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    sum_x4 += rule.weights[i] * std::pow(rule.points[i], 4);
    sum_x5 += rule.weights[i] * std::pow(rule.points[i], 5);
  }
  CHECK_THAT(sum_x4, WithinRel(2.0 / 5.0, 1e-14));
  CHECK_THAT(sum_x5, WithinAbs(0.0, 1e-15));
}

TEST_CASE("gauss-legendre matches tabulated 4-node values") {
  const Rule1D& rule = gauss_legendre(4);
  CHECK_THAT(rule.points[0], WithinAbs(-0.8611363115940526, 1e-14));
  CHECK_THAT(rule.points[1], WithinAbs(-0.3399810435848563, 1e-14));
  CHECK_THAT(rule.weights[0], WithinAbs(0.3478548451374538, 1e-14));
  CHECK_THAT(rule.weights[1], WithinAbs(0.6521451548625461, 1e-14));
}

TEST_CASE("radial quadrature reproduces gaussian and slater norms") {
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  const DensityModel slater = DensityModel::slater(1.0, 1.0);
  RadialQuad quad; // default 60 x 8
  quad.r_max = auto_r_max(gauss, 1e-14);
  const double ng =
      integrate_radial([&](double s) { return gauss.value({s, 0, 0}); }, quad);
  CHECK_THAT(ng, WithinAbs(1.0, 1e-12));
  quad.r_max = auto_r_max(slater, 1e-14);
  const double ns =
      integrate_radial([&](double s) { return slater.value({s, 0, 0}); }, quad);
  CHECK_THAT(ns, WithinAbs(1.0, 1e-10));
}

TEST_CASE("coulomb-weighted gaussian integral against the closed form") {
  // \int n / r d^3r = 2 sqrt(alpha/pi) for the unit gaussian
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  RadialQuad quad;
  quad.r_max = auto_r_max(gauss, 1e-14);
  const double v = integrate_radial(
      [&](double s) { return gauss.value({s, 0, 0}) / s; }, quad);
  CHECK_THAT(v, WithinRel(1.1283791670955126, 1e-12));
}

TEST_CASE("box quadrature integrates the unit cube") {
  BoxQuad box{{0, 0, 0}, {1, 1, 1}, 8};
  CHECK_THAT(integrate_box([](const Vec3&) { return 1.0; }, box),
             WithinRel(1.0, 1e-14));
  // separable cubic: \int xyz over [0,1]^3 = 1/8
  CHECK_THAT(integrate_box([](const Vec3& p) { return p.x * p.y * p.z; }, box),
             WithinRel(0.125, 1e-14));
}

TEST_CASE("anisotropic norm via automatic box") {
  const DensityModel aniso =
      DensityModel::anisotropic_gaussian({1.0, 2.0, 0.5}, 1.3);
  BoxQuad box = auto_box(aniso, 32, 1e-14);
  box.panels = 2; // the flat z direction needs the extra resolution
  const double n =
      integrate_box([&](const Vec3& p) { return aniso.value(p); }, box);
  CHECK_THAT(n, WithinAbs(1.3, 1e-10));
}

TEST_CASE("radial error decreases monotonically with refinement") {
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  double previous = 1.0;
  for (int panels : {2, 4, 8, 16}) {
    RadialQuad quad{8.0, panels, 4};
    const double err = std::abs(
        integrate_radial([&](double s) { return gauss.value({s, 0, 0}); },
                         quad) -
        1.0);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("box error decreases monotonically with node count") {
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  const Vec3 lo{-8, -8, -8}, hi{8, 8, 8};
  double previous = 1.0;
  for (int nodes : {4, 6, 8, 12, 16}) {
    const double err = std::abs(
        integrate_box([&](const Vec3& p) { return gauss.value(p); },
                      BoxQuad{lo, hi, nodes}) -
        1.0);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("non-finite integrand names the node") {
  RadialQuad quad{4.0, 2, 4};
  try {
    integrate_radial(
        [](double s) { return s > 1.0 ? NAN : 1.0; }, quad);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
  BoxQuad box{{0, 0, 0}, {1, 1, 1}, 4};
  CHECK_THROWS_AS(
      integrate_box([](const Vec3& p) { return 1.0 / (p.x - p.x); }, box),
      QuadratureError);
}

TEST_CASE("degenerate grids are rejected") {
  CHECK_THROWS_AS(composite_rule(1.0, 1.0, 4, 4), QuadratureError);
  CHECK_THROWS_AS(composite_rule(0.0, 1.0, 0, 4), QuadratureError);
  CHECK_THROWS_AS(integrate_radial([](double) { return 1.0; }, RadialQuad{}),
                  QuadratureError);
  CHECK_THROWS_AS(
      integrate_box([](const Vec3&) { return 1.0; },
                    BoxQuad{{0, 0, 0}, {0, 0, 0}, 4}),
      QuadratureError);
}

TEST_CASE("m = 3 scaling preserves the normalization under quadrature") {
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  const ScaledDensity scaled = scale_density(gauss, 2.0, 3.0);
  RadialQuad quad;
  quad.r_max = auto_r_max(scaled, 1e-14);
  const double n =
      integrate_radial([&](double s) { return scaled.value({s, 0, 0}); }, quad);
  CHECK_THAT(n, WithinAbs(gauss.analytic_norm(), 1e-10));
}

TEST_CASE("automatic radial extent satisfies the tail condition") {
  const DensityModel gauss = DensityModel::gaussian(1.0, 1.0);
  const double r = auto_r_max(gauss, 1e-14);
  CHECK(gauss.value({r, 0, 0}) * r * r < 1e-14);
  // a flatter scaled density needs a larger extent
  const ScaledDensity wide = scale_density(gauss, 0.5, 0.0);
  CHECK(auto_r_max(wide, 1e-14) > r);
}
