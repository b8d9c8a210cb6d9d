// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/functionals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace scalelab {

const double thomas_fermi_constant =
    0.3 * std::pow(3.0 * M_PI * M_PI, 2.0 / 3.0);

// ---------------------------------------------------------------------------
// FunctionalSpec

FunctionalSpec FunctionalSpec::number_of_electrons() {
  return {FunctionalKind::NumberOfElectrons, 0.0, 1.0, -3.0};
}
FunctionalSpec FunctionalSpec::external_coulomb(double z) {
  if (!(z > 0.0)) throw ConfigError("ext: nuclear charge z must be > 0");
  return {FunctionalKind::ExternalCoulomb, z, 1.0, -2.0};
}
FunctionalSpec FunctionalSpec::hartree() {
  return {FunctionalKind::Hartree, 0.0, 2.0, -5.0};
}
FunctionalSpec FunctionalSpec::thomas_fermi() {
  return {FunctionalKind::ThomasFermi, 0.0, 5.0 / 3.0, -3.0};
}
FunctionalSpec FunctionalSpec::von_weizsaecker() {
  return {FunctionalKind::VonWeizsaecker, 0.0, 1.0, -1.0};
}

FunctionalSpec FunctionalSpec::parse(std::string_view name) {
  if (name == "ne") return number_of_electrons();
  if (name == "hartree") return hartree();
  if (name == "tf") return thomas_fermi();
  if (name == "vw") return von_weizsaecker();
  if (name == "ext") return external_coulomb(1.0);
  if (name.starts_with("ext(") && name.ends_with(")")) {
    std::string_view body = name.substr(4, name.size() - 5);
    if (body.starts_with("z=")) body.remove_prefix(2);
    double z = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), z);
    if (ec != std::errc() || ptr != body.data() + body.size())
      throw ConfigError("bad external functional spec '" + std::string(name) +
                        "'");
    return external_coulomb(z);
  }
  throw ConfigError("unknown functional '" + std::string(name) +
                    "' (expected ne, ext(z=...), hartree, tf, vw)");
}

std::string FunctionalSpec::name() const {
  switch (kind_) {
    case FunctionalKind::NumberOfElectrons: return "ne";
    case FunctionalKind::Hartree: return "hartree";
    case FunctionalKind::ThomasFermi: return "tf";
    case FunctionalKind::VonWeizsaecker: return "vw";
    case FunctionalKind::ExternalCoulomb: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "ext(z=%.12g)", z_);
      return buf;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Energy evaluation

namespace {

RadialQuad resolve_radial(const Density& density, const QuadratureSpec& quad) {
  RadialQuad r = quad.radial;
  if (r.r_max <= 0.0) r.r_max = auto_r_max(density, quad.tail_tolerance);
  return r;
}

BoxQuad resolve_box(const Density& density, const QuadratureSpec& quad) {
  if (norm2(quad.box.hi - quad.box.lo) > 0.0) return quad.box;
  BoxQuad box = auto_box(density, quad.box.nodes, quad.tail_tolerance);
  box.panels = quad.box.panels;
  return box;
}

double von_weizsaecker_density(double n, const Vec3& grad) {
  return norm2(grad) / (8.0 * n);
}

// shell integrals against a resolved radial grid
double hartree_potential_resolved(const Density& density, double r,
                                  const RadialQuad& quad) {
  if (!density.spherically_symmetric())
    throw UnsupportedPathError(
        "hartree potential: radial path requires a spherically symmetric "
        "density");
  if (!(r > 0.0))
    throw SingularPointError("hartree potential evaluated at r = 0");
  const double r_max = quad.r_max;
  auto n_of = [&](double s) { return density.value(Vec3{s, 0, 0}); };
  const int nodes = quad.nodes;
  auto panels_for = [&](double len) {
    return std::max(8, static_cast<int>(std::ceil(quad.panels * len / r_max)));
  };
  double inner = 0.0;
  if (r < r_max)
    inner = integrate_1d([&](double s) { return n_of(s) * s * s; }, 0.0, r,
                         panels_for(r), nodes) /
                r +
            integrate_1d([&](double s) { return n_of(s) * s; }, r, r_max,
                         panels_for(r_max - r), nodes);
  else
    inner = integrate_1d([&](double s) { return n_of(s) * s * s; }, 0.0, r_max,
                         quad.panels, nodes) /
            r;
  return 4.0 * M_PI * inner;
}

} // namespace

double hartree_potential(const Density& density, double r,
                         const QuadratureSpec& quad) {
  return hartree_potential_resolved(density, r, resolve_radial(density, quad));
}

double evaluate_energy(const FunctionalSpec& spec, const Density& density,
                       const QuadratureSpec& quad) {
  const bool spherical = density.spherically_symmetric();
  switch (spec.kind()) {
    case FunctionalKind::NumberOfElectrons:
      if (spherical)
        return integrate_radial(
            [&](double s) { return density.value(Vec3{s, 0, 0}); },
            resolve_radial(density, quad));
      return integrate_box([&](const Vec3& p) { return density.value(p); },
                           resolve_box(density, quad));
    case FunctionalKind::ThomasFermi: {
      auto f = [&](const Vec3& p) {
        return thomas_fermi_constant * std::pow(density.value(p), 5.0 / 3.0);
      };
      if (spherical)
        return integrate_radial([&](double s) { return f(Vec3{s, 0, 0}); },
                                resolve_radial(density, quad));
      return integrate_box(f, resolve_box(density, quad));
    }
    case FunctionalKind::VonWeizsaecker: {
      auto f = [&](const Vec3& p) {
        return von_weizsaecker_density(density.value(p), density.gradient(p));
      };
      if (spherical)
        return integrate_radial([&](double s) { return f(Vec3{s, 0, 0}); },
                                resolve_radial(density, quad));
      return integrate_box(f, resolve_box(density, quad));
    }
    case FunctionalKind::ExternalCoulomb: {
      const double z = spec.z();
      if (spherical)
        return integrate_radial(
            [&](double s) { return -z * density.value(Vec3{s, 0, 0}) / s; },
            resolve_radial(density, quad));
      return integrate_box(
          [&](const Vec3& p) { return -z * density.value(p) / norm(p); },
          resolve_box(density, quad));
    }
    case FunctionalKind::Hartree: {
      if (!spherical)
        throw UnsupportedPathError(
            "hartree energy: radial path requires a spherically symmetric "
            "density (use hartree_energy_box6 as a desk-scale oracle)");
      const RadialQuad radial = resolve_radial(density, quad);
      auto integrand = [&](double s) {
        return density.value(Vec3{s, 0, 0}) *
               hartree_potential_resolved(density, s, radial);
      };
      return 0.5 * integrate_radial(integrand, radial);
    }
  }
  throw Error("unreachable functional kind");
}

// ---------------------------------------------------------------------------
// Functional derivatives

double functional_derivative(const FunctionalSpec& spec, const Density& density,
                             const Vec3& r, const QuadratureSpec& quad) {
  switch (spec.kind()) {
    case FunctionalKind::NumberOfElectrons:
      return 1.0;
    case FunctionalKind::ExternalCoulomb: {
      const double rho = norm(r);
      if (rho == 0.0)
        throw SingularPointError(
            "external potential derivative is singular at the origin");
      return -spec.z() / rho;
    }
    case FunctionalKind::Hartree:
      return hartree_potential(density, norm(r), quad);
    case FunctionalKind::ThomasFermi:
      return (5.0 / 3.0) * thomas_fermi_constant *
             std::pow(density.value(r), 2.0 / 3.0);
    case FunctionalKind::VonWeizsaecker: {
      const DensityData d = density.evaluate(r);
      if (!(d.value > 0.0))
        throw SampleError("von Weizsaecker derivative needs n > 0");
      return norm2(d.gradient) / (8.0 * d.value * d.value) -
             d.laplacian / (4.0 * d.value);
    }
  }
  throw Error("unreachable functional kind");
}

// ---------------------------------------------------------------------------
// Bump oracle

namespace {

struct Bump {
  Vec3 center;
  double inv_w2; // 1/width^2
  double amplitude;

  double value(const Vec3& p) const {
    return amplitude * std::exp(-inv_w2 * norm2(p - center));
  }
  Vec3 gradient(const Vec3& p) const {
    return (p - center) * (-2.0 * inv_w2 * value(p));
  }
};

double one_point_integrand(const FunctionalSpec& spec, double n,
                           const Vec3& grad, const Vec3& p) {
  switch (spec.kind()) {
    case FunctionalKind::NumberOfElectrons: return n;
    case FunctionalKind::ThomasFermi:
      return thomas_fermi_constant * std::pow(n, 5.0 / 3.0);
    case FunctionalKind::VonWeizsaecker: return von_weizsaecker_density(n, grad);
    case FunctionalKind::ExternalCoulomb: return -spec.z() * n / norm(p);
    case FunctionalKind::Hartree: break;
  }
  throw Error("one_point_integrand: not a one-point functional");
}

} // namespace

double fd_functional_derivative(const FunctionalSpec& spec,
                                const Density& density, const Vec3& r,
                                double eps, double width) {
  if (!(width > 0.0))
    throw PerturbationError("bump width must be > 0");
  const Bump bump{r, 1.0 / (width * width),
                  std::pow(M_PI * width * width, -1.5)};

  if (spec.kind() == FunctionalKind::Hartree) {
    auto terms = as_gaussian_terms(density);
    if (!terms)
      throw UnsupportedPathError(
          "hartree bump oracle requires a Gaussian-mix density");
    if (eps == 0.0) eps = 1e-4 * density.value(r) / bump.amplitude;
    if (!(density.value(r) - eps * bump.amplitude > 0.0))
      throw PerturbationError(
          "bump perturbation drives the density negative at its center");
    const double alpha_b = bump.inv_w2;
    std::vector<GaussianTerm> plus = *terms;
    plus.push_back(GaussianTerm{eps, alpha_b, r});
    std::vector<GaussianTerm> minus = *terms;
    minus.push_back(GaussianTerm{-eps, alpha_b, r});
    return (hartree_energy_gaussian_pairs(plus) -
            hartree_energy_gaussian_pairs(minus)) /
           (2.0 * eps);
  }

  // The difference integrand is supported only where the bump is; integrate
  // it over a bump-local box with a composite rule fine enough for the width.
  const double half = 6.0 * width;
  const Rule1D axis = composite_rule(-half, half, 4, 7);

  if (eps == 0.0) {
    double n_min = density.value(r);
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2)
        for (int sz = -1; sz <= 1; sz += 2)
          n_min = std::min(
              n_min, density.value(r + Vec3{sx * half, sy * half, sz * half}));
    eps = 1e-4 * n_min / bump.amplitude;
  }
  if (!(eps > 0.0)) throw PerturbationError("bump step eps must be > 0");

  double delta_f = 0.0;
  double bump_mass = 0.0;
  for (std::size_t i = 0; i < axis.points.size(); ++i)
    for (std::size_t j = 0; j < axis.points.size(); ++j)
      for (std::size_t k = 0; k < axis.points.size(); ++k) {
        const Vec3 p = r + Vec3{axis.points[i], axis.points[j], axis.points[k]};
        const double w =
            axis.weights[i] * axis.weights[j] * axis.weights[k];
        const double b = bump.value(p);
        const Vec3 gb = bump.gradient(p);
        const double n = density.value(p);
        const Vec3 g = density.gradient(p);
        if (!(n - eps * b > 0.0))
          throw PerturbationError(
              "bump perturbation drives the density negative inside the "
              "bump region");
        const double fp = one_point_integrand(spec, n + eps * b, g + gb * eps, p);
        const double fm = one_point_integrand(spec, n - eps * b, g - gb * eps, p);
        delta_f += w * (fp - fm);
        bump_mass += w * b;
      }
  return delta_f / (2.0 * eps * bump_mass);
}

// ---------------------------------------------------------------------------
// Hartree oracles

double hartree_energy_gaussian_pairs(std::span<const GaussianTerm> terms) {
  double energy = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double mu = terms[i].alpha * terms[j].alpha /
                        (terms[i].alpha + terms[j].alpha);
      const double d = norm(terms[i].center - terms[j].center);
      const double pair = d > 0.0 ? std::erf(std::sqrt(mu) * d) / d
                                  : 2.0 * std::sqrt(mu / M_PI);
      energy += 0.5 * terms[i].weight * terms[j].weight * pair;
    }
  }
  return energy;
}

std::optional<std::vector<GaussianTerm>> as_gaussian_terms(const Density& d) {
  const auto* terms = d.model().gaussian_terms();
  if (!terms) return std::nullopt;
  if (!d.scaled()) return *terms;
  const double lambda = d.scaling().lambda;
  const double m = d.scaling().m;
  std::vector<GaussianTerm> out;
  out.reserve(terms->size());
  for (const auto& t : *terms)
    out.push_back(GaussianTerm{t.weight * std::pow(lambda, m - 3.0),
                               t.alpha * lambda * lambda, t.center / lambda});
  return out;
}

double hartree_energy_box6(const Density& density, int nodes,
                           double halfwidth) {
  if (nodes < 2 || !(halfwidth > 0.0))
    throw QuadratureError("hartree_energy_box6: bad grid parameters");
  // Staggered per-axis rules so the two grids never share a node.
  auto build = [&](int n) {
    const Rule1D axis = composite_rule(-halfwidth, halfwidth, 1, n);
    struct Grid {
      std::vector<double> x, y, z, fw;
    } g;
    const std::size_t total = axis.points.size() * axis.points.size() *
                              axis.points.size();
    g.x.reserve(total);
    g.y.reserve(total);
    g.z.reserve(total);
    g.fw.reserve(total);
    for (std::size_t i = 0; i < axis.points.size(); ++i)
      for (std::size_t j = 0; j < axis.points.size(); ++j)
        for (std::size_t k = 0; k < axis.points.size(); ++k) {
          const Vec3 p{axis.points[i], axis.points[j], axis.points[k]};
          g.x.push_back(p.x);
          g.y.push_back(p.y);
          g.z.push_back(p.z);
          g.fw.push_back(axis.weights[i] * axis.weights[j] * axis.weights[k] *
                         density.value(p));
        }
    return g;
  };
  const auto ga = build(nodes);
  const auto gb = build(nodes + 3);
  double sum = 0.0;
  for (std::size_t i = 0; i < ga.fw.size(); ++i) {
    const double xi = ga.x[i], yi = ga.y[i], zi = ga.z[i], fi = ga.fw[i];
    double row = 0.0;
    for (std::size_t j = 0; j < gb.fw.size(); ++j) {
      const double dx = xi - gb.x[j];
      const double dy = yi - gb.y[j];
      const double dz = zi - gb.z[j];
      row += gb.fw[j] / std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    sum += fi * row;
  }
  return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// Energy densities

namespace {

double require_positive_n(double n) {
  if (!(n > 0.0))
    throw SampleError("energy density requires n > 0 at the sample point");
  return n;
}

} // namespace

EnergyDensity energy_density(const FunctionalSpec& spec) {
  EnergyDensity ed;
  ed.name = spec.name();
  switch (spec.kind()) {
    case FunctionalKind::NumberOfElectrons:
      ed.depends_on_density = true;
      ed.f = [](const OnePointArgs& a) { return a.n; };
      ed.df_dn = [](const OnePointArgs&) { return 1.0; };
      ed.df_dgrad = [](const OnePointArgs&) { return Vec3{}; };
      ed.coord_divergence = [](const OnePointArgs& a) { return 3.0 * a.n; };
      return ed;
    case FunctionalKind::ThomasFermi:
      ed.depends_on_density = true;
      ed.f = [](const OnePointArgs& a) {
        return thomas_fermi_constant *
               std::pow(require_positive_n(a.n), 5.0 / 3.0);
      };
      ed.df_dn = [](const OnePointArgs& a) {
        return (5.0 / 3.0) * thomas_fermi_constant *
               std::pow(require_positive_n(a.n), 2.0 / 3.0);
      };
      ed.df_dgrad = [](const OnePointArgs&) { return Vec3{}; };
      ed.coord_divergence = [](const OnePointArgs& a) {
        return 3.0 * thomas_fermi_constant *
               std::pow(require_positive_n(a.n), 5.0 / 3.0);
      };
      return ed;
    case FunctionalKind::VonWeizsaecker:
      ed.depends_on_density = true;
      ed.depends_on_gradient = true;
      ed.f = [](const OnePointArgs& a) {
        return von_weizsaecker_density(require_positive_n(a.n), a.grad);
      };
      ed.df_dn = [](const OnePointArgs& a) {
        const double n = require_positive_n(a.n);
        return -norm2(a.grad) / (8.0 * n * n);
      };
      ed.df_dgrad = [](const OnePointArgs& a) {
        return a.grad / (4.0 * require_positive_n(a.n));
      };
      ed.coord_divergence = [](const OnePointArgs& a) {
        return 3.0 * von_weizsaecker_density(require_positive_n(a.n), a.grad);
      };
      return ed;
    case FunctionalKind::ExternalCoulomb: {
      ed.depends_on_density = true;
      ed.depends_on_coordinates = true;
      const double z = spec.z();
      auto fval = [z](const OnePointArgs& a) {
        const double rho = norm(a.r);
        if (rho == 0.0)
          throw SingularPointError("external integrand singular at r = 0");
        return -z * a.n / rho;
      };
      ed.f = fval;
      ed.df_dn = [z](const OnePointArgs& a) {
        const double rho = norm(a.r);
        if (rho == 0.0)
          throw SingularPointError("external integrand singular at r = 0");
        return -z / rho;
      };
      ed.df_dgrad = [](const OnePointArgs&) { return Vec3{}; };
      // div_r [r f] at frozen n: 3f + r . grad_r(-z n / |r|) = 2f
      ed.coord_divergence = [fval](const OnePointArgs& a) {
        return 2.0 * fval(a);
      };
      return ed;
    }
    case FunctionalKind::Hartree: {
      ed.arity = EnergyDensity::Arity::TwoPoint;
      ed.depends_on_density = true;
      ed.depends_on_coordinates = true;
      auto distance = [](const TwoPointArgs& a) {
        const double d = norm(a.r - a.rp);
        if (d == 0.0)
          throw SingularPointError("hartree kernel singular for r == r'");
        return d;
      };
      ed.f2 = [distance](const TwoPointArgs& a) {
        return a.n_r * a.n_rp / (2.0 * distance(a));
      };
      ed.df2_dn_r = [distance](const TwoPointArgs& a) {
        return a.n_rp / (2.0 * distance(a));
      };
      ed.df2_dn_rp = [distance](const TwoPointArgs& a) {
        return a.n_r / (2.0 * distance(a));
      };
      ed.df2_dgrad_r = [](const TwoPointArgs&) { return Vec3{}; };
      ed.df2_dgrad_rp = [](const TwoPointArgs&) { return Vec3{}; };
      ed.coord_divergence2 = [distance](const TwoPointArgs& a) {
        const double d = distance(a);
        const double f = a.n_r * a.n_rp / (2.0 * d);
        const Vec3 u = a.r - a.rp;
        // grad_r f = -f u / d^2 at frozen densities; grad_r' f = +f u / d^2
        return (3.0 * f - f * dot(a.r, u) / (d * d)) +
               (3.0 * f + f * dot(a.rp, u) / (d * d));
      };
      return ed;
    }
  }
  throw Error("unreachable functional kind");
}

EnergyDensity make_density_power_integrand(double coefficient,
                                           double exponent) {
  EnergyDensity ed;
  ed.name = "n_power";
  ed.depends_on_density = true;
  ed.f = [=](const OnePointArgs& a) {
    return coefficient * std::pow(require_positive_n(a.n), exponent);
  };
  ed.df_dn = [=](const OnePointArgs& a) {
    return coefficient * exponent *
           std::pow(require_positive_n(a.n), exponent - 1.0);
  };
  ed.df_dgrad = [](const OnePointArgs&) { return Vec3{}; };
  ed.coord_divergence = [=](const OnePointArgs& a) {
    return 3.0 * coefficient * std::pow(require_positive_n(a.n), exponent);
  };
  return ed;
}

EnergyDensity make_gradient_power_integrand(double exponent) {
  EnergyDensity ed;
  ed.name = "grad_power";
  ed.depends_on_gradient = true;
  auto magnitude = [](const OnePointArgs& a) {
    const double g = norm(a.grad);
    if (!(g > 0.0))
      throw SampleError(
          "gradient-only density undefined where grad n vanishes");
    return g;
  };
  ed.f = [=](const OnePointArgs& a) { return std::pow(magnitude(a), exponent); };
  ed.df_dn = [](const OnePointArgs&) { return 0.0; };
  ed.df_dgrad = [=](const OnePointArgs& a) {
    const double g = magnitude(a);
    return a.grad * (exponent * std::pow(g, exponent - 2.0));
  };
  ed.coord_divergence = [=](const OnePointArgs& a) {
    return 3.0 * std::pow(magnitude(a), exponent);
  };
  return ed;
}

} // namespace scalelab
