// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "scalelab/errors.hpp"
#include "scalelab/vec3.hpp"

namespace scalelab {

/// 1D quadrature rule: paired points and weights.
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [-1, 1]. Cached; thread-safe.
const Rule1D& gauss_legendre(int n);

/// Composite Gauss-Legendre rule: `panels` equal panels over [a, b],
/// `nodes` Gauss points per panel.
Rule1D composite_rule(double a, double b, int panels, int nodes);

/// Radial grid for full-space integrals of spherically symmetric fields.
/// r_max == 0 requests automatic extent selection from the density tail.
struct RadialQuad {
  double r_max = 0.0; // bohr; 0 => auto
  int panels = 60;
  int nodes = 8;
};

/// Tensor-product Gauss-Legendre grid over an axis-aligned box.
struct BoxQuad {
  Vec3 lo{0, 0, 0};
  Vec3 hi{0, 0, 0}; // lo == hi => auto extent
  int nodes = 32;   // per panel per axis
  int panels = 1;   // panels per axis
};

/// Bundle of quadrature settings shared by the evaluation engines.
struct QuadratureSpec {
  RadialQuad radial;
  BoxQuad box;
  double tail_tolerance = 1e-14;
};

namespace detail {
[[noreturn]] void throw_bad_node(const std::string& where, const Vec3& node,
                                 double value);
}

/// Plain 1D integral of f over [a, b] with a composite Gauss rule.
template <class F>
double integrate_1d(F&& f, double a, double b, int panels, int nodes) {
  const Rule1D rule = composite_rule(a, b, panels, nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double v = f(rule.points[i]);
    if (!std::isfinite(v))
      detail::throw_bad_node("integrate_1d", Vec3{rule.points[i], 0, 0}, v);
    sum += rule.weights[i] * v;
  }
  return sum;
}

/// Full-space integral of a spherically symmetric integrand:
/// 4*pi * \int_0^{r_max} f(s) s^2 ds. r_max must be resolved (> 0).
template <class F>
double integrate_radial(F&& f, const RadialQuad& quad) {
  if (quad.r_max <= 0.0)
    throw QuadratureError("integrate_radial: unresolved r_max (must be > 0)");
  const Rule1D rule = composite_rule(0.0, quad.r_max, quad.panels, quad.nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double s = rule.points[i];
    const double v = f(s);
    if (!std::isfinite(v))
      detail::throw_bad_node("integrate_radial", Vec3{s, 0, 0}, v);
    sum += rule.weights[i] * v * s * s;
  }
  return 4.0 * M_PI * sum;
}

/// Integral of f over the box, tensor-product Gauss-Legendre.
template <class F>
double integrate_box(F&& f, const BoxQuad& quad) {
  if (!(quad.hi.x > quad.lo.x && quad.hi.y > quad.lo.y && quad.hi.z > quad.lo.z))
    throw QuadratureError("integrate_box: box has non-positive extent");
  const Rule1D rx = composite_rule(quad.lo.x, quad.hi.x, quad.panels, quad.nodes);
  const Rule1D ry = composite_rule(quad.lo.y, quad.hi.y, quad.panels, quad.nodes);
  const Rule1D rz = composite_rule(quad.lo.z, quad.hi.z, quad.panels, quad.nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rx.points.size(); ++i) {
    for (std::size_t j = 0; j < ry.points.size(); ++j) {
      double row = 0.0;
      for (std::size_t k = 0; k < rz.points.size(); ++k) {
        const Vec3 p{rx.points[i], ry.points[j], rz.points[k]};
        const double v = f(p);
        if (!std::isfinite(v)) detail::throw_bad_node("integrate_box", p, v);
        row += rz.weights[k] * v;
      }
      sum += rx.weights[i] * ry.weights[j] * row;
    }
  }
  return sum;
}

/// Radial extent such that n(R) * R^2 < tail_tolerance, found by growing
/// from a 4-bohr floor. The density is probed along +x from the origin.
template <class D>
double auto_r_max(const D& density, double tail_tolerance) {
  double r = 4.0;
  while (density.value(Vec3{r, 0, 0}) * r * r >= tail_tolerance) {
    r *= 1.5;
    if (r > 1e4)
      throw QuadratureError(
          "auto_r_max: density tail does not reach the tolerance by r = 1e4");
  }
  return r;
}

/// Cube around the density centroid whose faces satisfy the same tail
/// condition per axis.
template <class D>
BoxQuad auto_box(const D& density, int nodes, double tail_tolerance) {
  const Vec3 c = density.centroid();
  BoxQuad box;
  box.nodes = nodes;
  for (int axis = 0; axis < 3; ++axis) {
    double half = 2.0;
    for (;;) {
      Vec3 plus = c, minus = c;
      plus[axis] += half;
      minus[axis] -= half;
      const double edge =
          std::max(density.value(plus), density.value(minus)) * half * half;
      if (edge < tail_tolerance) break;
      half *= 1.5;
      if (half > 1e4)
        throw QuadratureError(
            "auto_box: density tail does not reach the tolerance by 1e4");
    }
    box.lo[axis] = c[axis] - half;
    box.hi[axis] = c[axis] + half;
  }
  return box;
}

} // namespace scalelab
