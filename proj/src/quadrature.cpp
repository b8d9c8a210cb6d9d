// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/quadrature.hpp"

#include <cstdio>
#include <map>
#include <mutex>

namespace scalelab {

namespace {

// Newton iteration on the Legendre recurrence; nodes exploit the
// symmetry of the roots about zero.
Rule1D compute_gauss_legendre(int n) {
  Rule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 1; i <= (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[i - 1] = -x;
    rule.points[n - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

} // namespace

const Rule1D& gauss_legendre(int n) {
  if (n < 1) throw QuadratureError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

Rule1D composite_rule(double a, double b, int panels, int nodes) {
  if (panels < 1 || nodes < 1)
    throw QuadratureError("composite_rule: panels and nodes must be >= 1");
  if (!(b > a)) throw QuadratureError("composite_rule: empty interval");
  const Rule1D& base = gauss_legendre(nodes);
  Rule1D rule;
  rule.points.reserve(static_cast<std::size_t>(panels) * nodes);
  rule.weights.reserve(static_cast<std::size_t>(panels) * nodes);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < nodes; ++k) {
      rule.points.push_back(mid + 0.5 * h * base.points[k]);
      rule.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return rule;
}

namespace detail {

void throw_bad_node(const std::string& where, const Vec3& node, double value) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%s: non-finite integrand value %g at node (%.12g, %.12g, %.12g)",
                where.c_str(), value, node.x, node.y, node.z);
  throw QuadratureError(buf);
}

} // namespace detail

} // namespace scalelab
