// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

#include "scalelab/local_invariance.hpp"
#include "scalelab/report.hpp"
#include "scalelab/sampling.hpp"
#include "scalelab/version.hpp"

namespace scalelab {

namespace {

constexpr double k_sample_floor = 1e-8;
const Vec3 k_sample_lo{-2, -2, -2};
const Vec3 k_sample_hi{2, 2, 2};

struct NamedDensity {
  std::string spec;
  Density density;
};

struct RunContext {
  std::vector<FunctionalSpec> functionals;
  std::vector<NamedDensity> densities;
  QuadratureSpec quad;
};

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[24];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool requested(const RunConfig& cfg, CheckKind kind) {
  return std::find(cfg.checks.begin(), cfg.checks.end(), kind) !=
         cfg.checks.end();
}

void validate(const RunConfig& cfg) {
  if (cfg.checks.empty())
    throw ConfigError("no checks requested; pick from homogeneity, "
                      "invariance, euler, representation, pde, box, forms");
  if (cfg.functionals.empty()) throw ConfigError("functional list is empty");
  if (cfg.densities.empty()) throw ConfigError("density list is empty");
  if ((requested(cfg, CheckKind::Homogeneity) ||
       requested(cfg, CheckKind::Invariance)) &&
      cfg.lambda_set.empty())
    throw ConfigError("lambda_set is empty but a degree fit was requested");
  if ((requested(cfg, CheckKind::Homogeneity) ||
       requested(cfg, CheckKind::Invariance) ||
       requested(cfg, CheckKind::Euler) ||
       requested(cfg, CheckKind::Representation)) &&
      cfg.m_set.empty())
    throw ConfigError("m_set is empty but a degree-dependent check was "
                      "requested");
  if (requested(cfg, CheckKind::Pde) && cfg.pde_points < 1)
    throw ConfigError("pde_points must be >= 1");
  if (requested(cfg, CheckKind::Box) &&
      (cfg.box_count < 1 || cfg.box_lambdas.empty()))
    throw ConfigError("box check needs box_count >= 1 and box_lambdas");
  if (cfg.quadrature.radial_panels < 1 || cfg.quadrature.radial_nodes < 1 ||
      cfg.quadrature.box_nodes < 2)
    throw ConfigError("quadrature node/panel counts out of range");
}

RunContext build_context(const RunConfig& cfg) {
  RunContext ctx;
  for (const std::string& name : cfg.functionals)
    ctx.functionals.push_back(FunctionalSpec::parse(name));
  for (const std::string& spec : cfg.densities)
    ctx.densities.push_back(NamedDensity{spec, Density(DensityModel::parse(spec))});
  ctx.quad = cfg.quadrature.to_spec();
  return ctx;
}

void run_homogeneity(const RunConfig& cfg, const RunContext& ctx,
                     Report& report) {
  for (const auto& spec : ctx.functionals) {
    for (const auto& nd : ctx.densities) {
      for (double m : cfg.m_set) {
        HomogeneityEntry entry;
        entry.functional = spec.name();
        entry.density = nd.spec;
        entry.m = m;
        entry.declared_p = spec.declared_p(m);
        try {
          const HomogeneityFit fit = fit_homogeneity_degree(
              spec, nd.density, m, cfg.lambda_set, ctx.quad);
          entry.p_hat = fit.p_hat;
          entry.residual_rms = fit.residual_rms;
          entry.pass =
              std::abs(fit.p_hat - entry.declared_p) <=
                  cfg.thresholds.homogeneity_p &&
              fit.residual_rms <= cfg.thresholds.homogeneity_rms;
          for (std::size_t i = 0; i < fit.lambdas.size(); ++i)
            report.sweep.push_back(SweepRow{
                entry.functional, entry.density, m, fit.lambdas[i],
                fit.values[i], fit.log_values[i].first,
                fit.log_values[i].second});
        } catch (const Error& e) {
          entry.errored = true;
          entry.message = e.what();
        }
        report.homogeneity.push_back(std::move(entry));
      }
    }
  }
}

void run_invariance(const RunConfig& cfg, const RunContext& ctx,
                    Report& report) {
  for (const auto& spec : ctx.functionals) {
    for (const auto& nd : ctx.densities) {
      InvarianceEntry entry;
      entry.functional = spec.name();
      entry.density = nd.spec;
      entry.declared_m0 = spec.declared_m0();
      entry.declared_q = spec.declared_q();
      try {
        const InvarianceResult fit = fit_invariance_degree(
            spec, nd.density, cfg.m_set, cfg.lambda_set, ctx.quad);
        entry.m0_hat = fit.m0_hat;
        entry.q_hat = fit.q_hat;
        entry.k_hat = fit.k_hat;
        entry.fit_residual = fit.fit_residual;
        entry.degenerate = fit.degenerate;
        entry.condition_residual =
            check_invariance_condition(spec, nd.density, ctx.quad);
        entry.pass = !fit.degenerate &&
                     std::abs(fit.m0_hat - entry.declared_m0) <=
                         cfg.thresholds.m0 &&
                     std::abs(fit.q_hat - entry.declared_q) <=
                         cfg.thresholds.q &&
                     entry.condition_residual <=
                         cfg.thresholds.invariance_condition;
      } catch (const Error& e) {
        entry.errored = true;
        entry.message = e.what();
      }
      report.invariance.push_back(std::move(entry));
    }
  }
}

void run_identity(const RunConfig& cfg, const RunContext& ctx, Report& report,
                  bool euler) {
  for (const auto& spec : ctx.functionals) {
    for (const auto& nd : ctx.densities) {
      for (double m : cfg.m_set) {
        IdentityEntry entry;
        entry.functional = spec.name();
        entry.density = nd.spec;
        entry.m = m;
        if (std::abs(spec.declared_p(m)) < 1e-9) {
          entry.skipped = true;
          entry.pass = true;
          entry.message = "m equals the invariance degree; identity "
                          "undefined (see the invariance condition)";
        } else {
          try {
            entry.rel_error =
                euler ? check_euler_relation(spec, nd.density, m, ctx.quad)
                      : check_integral_representation(spec, nd.density, m,
                                                      ctx.quad);
            const double tol = euler ? cfg.thresholds.euler
                                     : cfg.thresholds.representation;
            entry.pass = entry.rel_error <= tol;
          } catch (const Error& e) {
            entry.errored = true;
            entry.message = e.what();
          }
        }
        (euler ? report.euler : report.representation)
            .push_back(std::move(entry));
      }
    }
  }
}

void run_pde(const RunConfig& cfg, const RunContext& ctx, Report& report) {
  for (const auto& spec : ctx.functionals) {
    for (const auto& nd : ctx.densities) {
      PdeEntry entry;
      entry.functional = spec.name();
      entry.density = nd.spec;
      entry.m0 = spec.declared_m0();
      entry.seed = cfg.seed;
      try {
        const EnergyDensity ed = energy_density(spec);
        PointSampler sampler(cfg.seed);
        ResidualReport rr;
        if (ed.arity == EnergyDensity::Arity::TwoPoint) {
          const auto pairs = sampler.density_pairs(
              nd.density, cfg.pde_points, k_sample_lo, k_sample_hi,
              k_sample_floor);
          rr = residual_two_point_pde(ed, nd.density, entry.m0, pairs);
        } else {
          const auto points = sampler.density_points(
              nd.density, cfg.pde_points, k_sample_lo, k_sample_hi,
              k_sample_floor);
          rr = residual_one_point_pde(ed, nd.density, entry.m0, points);
        }
        entry.equation_id = rr.equation_id;
        entry.sample_points = rr.sample_points;
        entry.max_rel_residual = rr.max_rel_residual;
        entry.mean_rel_residual = rr.mean_rel_residual;
        entry.normalization = rr.normalization;
        entry.pass = rr.max_rel_residual <= cfg.thresholds.pde_max;
      } catch (const Error& e) {
        entry.errored = true;
        entry.message = e.what();
      }
      report.pde_residuals.push_back(std::move(entry));
    }
  }
}

void run_box(const RunConfig& cfg, const RunContext& ctx, Report& report) {
  for (const auto& spec : ctx.functionals) {
    const bool eligible = spec.kind() == FunctionalKind::NumberOfElectrons ||
                          spec.kind() == FunctionalKind::ThomasFermi ||
                          spec.kind() == FunctionalKind::VonWeizsaecker;
    for (const auto& nd : ctx.densities) {
      if (!eligible) {
        BoxEntry entry;
        entry.functional = spec.name();
        entry.density = nd.spec;
        entry.skipped = true;
        entry.pass = true;
        entry.message =
            "skipped: integrand is two-point or carries a coordinate "
            "singularity; not box-eligible";
        report.box_invariance.push_back(std::move(entry));
        continue;
      }
      PointSampler sampler(cfg.seed);
      for (int b = 0; b < cfg.box_count; ++b) {
        BoxQuad box;
        box.nodes = cfg.quadrature.box_nodes;
        for (int axis = 0; axis < 3; ++axis) {
          const double lo = sampler.uniform(-2.0, 1.4);
          const double hi = lo + sampler.uniform(0.4, 2.0 - lo);
          box.lo[axis] = lo;
          box.hi[axis] = hi;
        }
        for (double lambda : cfg.box_lambdas) {
          BoxEntry entry;
          entry.functional = spec.name();
          entry.density = nd.spec;
          entry.lo = box.lo;
          entry.hi = box.hi;
          entry.lambda = lambda;
          try {
            const EnergyDensity ed = energy_density(spec);
            entry.rel_error = check_box_invariance(
                ed, nd.density, spec.declared_m0(), box, lambda);
            entry.pass = entry.rel_error <= cfg.thresholds.box;
          } catch (const Error& e) {
            entry.errored = true;
            entry.message = e.what();
          }
          report.box_invariance.push_back(std::move(entry));
        }
      }
    }
  }
}

void run_forms(const RunConfig& cfg, const RunContext& ctx, Report& report) {
  for (const auto& nd : ctx.densities) {
    PointSampler sampler(cfg.seed);
    std::vector<Vec3> points;
    try {
      points = sampler.density_points(nd.density, cfg.pde_points, k_sample_lo,
                                      k_sample_hi, k_sample_floor);
    } catch (const Error& e) {
      FormEntry entry;
      entry.form = "sampling";
      entry.density = nd.spec;
      entry.errored = true;
      entry.message = e.what();
      report.forms.push_back(std::move(entry));
      continue;
    }

    for (const auto& spec : ctx.functionals) {
      if (spec.kind() == FunctionalKind::Hartree)
        continue; // no one-point solution form; covered by the pde check
      FormEntry entry;
      entry.functional = spec.name();
      entry.density = nd.spec;
      entry.sample_points = static_cast<int>(points.size());
      entry.seed = cfg.seed;
      try {
        switch (spec.kind()) {
          case FunctionalKind::NumberOfElectrons:
          case FunctionalKind::ThomasFermi: {
            entry.form = "solution_form_density";
            entry.has_constant = true;
            entry.expected_c =
                spec.kind() == FunctionalKind::ThomasFermi
                    ? thomas_fermi_constant
                    : 1.0;
            const SolutionFormFit fit = check_solution_form_density(
                energy_density(spec), nd.density, spec.declared_m0(), points);
            entry.c_hat = fit.c_hat;
            entry.spread = fit.spread;
            entry.pass =
                fit.spread <= cfg.thresholds.form_spread &&
                std::abs(fit.c_hat - entry.expected_c) <=
                    cfg.thresholds.form_spread;
            break;
          }
          case FunctionalKind::VonWeizsaecker: {
            entry.form = "solution_form_ts";
            const ResidualReport rr = check_ts_form(nd.density, points);
            entry.max_rel_residual = rr.max_rel_residual;
            entry.pass = rr.max_rel_residual <= cfg.thresholds.form_residual;
            break;
          }
          case FunctionalKind::ExternalCoulomb: {
            entry.form = "solution_form_coordinate";
            const ResidualReport rr = check_solution_form_coordinate(
                nd.density, spec.z(), spec.declared_m0(), points);
            entry.max_rel_residual = rr.max_rel_residual;
            entry.pass = rr.max_rel_residual <= cfg.thresholds.form_residual;
            break;
          }
          case FunctionalKind::Hartree:
            break;
        }
      } catch (const Error& e) {
        entry.errored = true;
        entry.pass = false;
        entry.message = e.what();
      }
      report.forms.push_back(std::move(entry));
    }

    // no DFT functional depends on the gradient alone, so that PDE is
    // exercised with the synthetic f = |grad n|^{3/(m0+1)} at m0 = 1
    FormEntry synthetic;
    synthetic.form = "gradient_only_pde";
    synthetic.functional = "synthetic:|grad n|^(3/2)";
    synthetic.density = nd.spec;
    synthetic.sample_points = static_cast<int>(points.size());
    synthetic.seed = cfg.seed;
    try {
      const double m0 = 1.0;
      const ResidualReport rr = check_solution_form_gradient(
          make_gradient_power_integrand(3.0 / (m0 + 1.0)), nd.density, m0,
          points);
      synthetic.max_rel_residual = rr.max_rel_residual;
      synthetic.pass = rr.max_rel_residual <= cfg.thresholds.form_residual;
    } catch (const Error& e) {
      synthetic.errored = true;
      synthetic.message = e.what();
    }
    report.forms.push_back(std::move(synthetic));
  }
}

template <class F>
void timed(Report& report, CheckKind kind, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  report.timings.emplace_back(check_name(kind), elapsed.count());
}

bool everything_passed(const Report& report) {
  auto ok = [](const auto& entries) {
    return std::all_of(entries.begin(), entries.end(),
                       [](const auto& e) { return e.pass && !e.errored; });
  };
  return ok(report.homogeneity) && ok(report.invariance) && ok(report.euler) &&
         ok(report.representation) && ok(report.pde_residuals) &&
         ok(report.box_invariance) && ok(report.forms);
}

} // namespace

Report run(const RunConfig& cfg) {
  validate(cfg);
  Report report;
  report.version = version;
  report.config = cfg;
  RunContext ctx = build_context(cfg);

  for (CheckKind kind : all_checks) {
    if (!requested(cfg, kind)) continue;
    switch (kind) {
      case CheckKind::Homogeneity:
        timed(report, kind, [&] { run_homogeneity(cfg, ctx, report); });
        break;
      case CheckKind::Invariance:
        timed(report, kind, [&] { run_invariance(cfg, ctx, report); });
        break;
      case CheckKind::Euler:
        timed(report, kind, [&] { run_identity(cfg, ctx, report, true); });
        break;
      case CheckKind::Representation:
        timed(report, kind, [&] { run_identity(cfg, ctx, report, false); });
        break;
      case CheckKind::Pde:
        timed(report, kind, [&] { run_pde(cfg, ctx, report); });
        break;
      case CheckKind::Box:
        timed(report, kind, [&] { run_box(cfg, ctx, report); });
        break;
      case CheckKind::Forms:
        timed(report, kind, [&] { run_forms(cfg, ctx, report); });
        break;
    }
  }
  report.timestamp = utc_timestamp();
  report.all_passed = everything_passed(report);
  return report;
}

int exit_status(const Report& report) { return report.all_passed ? 0 : 1; }

} // namespace scalelab
