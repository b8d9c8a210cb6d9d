// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "scalelab/density.hpp"
#include "scalelab/errors.hpp"
#include "scalelab/vec3.hpp"

namespace scalelab {

/// Deterministic point sampler. Doubles are derived from the raw mt19937_64
/// stream so sequences are reproducible across platforms.
class PointSampler {
public:
  explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Vec3 point_in_box(const Vec3& lo, const Vec3& hi) {
    return {uniform(lo.x, hi.x), uniform(lo.y, hi.y), uniform(lo.z, hi.z)};
  }

  /// Rejection-sample a point of the box where the density exceeds min_n.
  Vec3 density_point(const Density& density, const Vec3& lo, const Vec3& hi,
                     double min_n, int max_tries = 100000) {
    for (int i = 0; i < max_tries; ++i) {
      const Vec3 p = point_in_box(lo, hi);
      if (density.value(p) > min_n) return p;
    }
    throw SampleError("density_point: no point with n above the floor found");
  }

  std::vector<Vec3> density_points(const Density& density, int count,
                                   const Vec3& lo, const Vec3& hi,
                                   double min_n) {
    std::vector<Vec3> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
      pts.push_back(density_point(density, lo, hi, min_n));
    return pts;
  }

  /// Distinct point pairs for two-point checks (separation above min_sep).
  std::vector<std::pair<Vec3, Vec3>> density_pairs(const Density& density,
                                                   int count, const Vec3& lo,
                                                   const Vec3& hi, double min_n,
                                                   double min_sep = 1e-6) {
    std::vector<std::pair<Vec3, Vec3>> pairs;
    pairs.reserve(count);
    while (static_cast<int>(pairs.size()) < count) {
      const Vec3 a = density_point(density, lo, hi, min_n);
      const Vec3 b = density_point(density, lo, hi, min_n);
      if (norm(a - b) > min_sep) pairs.emplace_back(a, b);
    }
    return pairs;
  }

private:
  std::mt19937_64 rng_;
};

} // namespace scalelab
