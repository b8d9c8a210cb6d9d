// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace scalelab {

namespace {

void require_finite_point(const Vec3& r) {
  if (!finite(r))
    throw SampleError("density evaluation at a non-finite point rejected");
}

double gaussian_prefactor(double alpha) {
  return std::pow(alpha / M_PI, 1.5);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

} // namespace

// ---------------------------------------------------------------------------
// DensityModel

DensityModel DensityModel::gaussian(double alpha, double n_electrons) {
  return gaussian_mix({GaussianTerm{n_electrons, alpha, Vec3{}}});
}

DensityModel DensityModel::gaussian_mix(std::vector<GaussianTerm> terms) {
  if (terms.empty())
    throw InvalidDensityError("gaussian-mix: at least one term required");
  for (const auto& t : terms) {
    if (!(t.weight > 0.0))
      throw InvalidDensityError("gaussian-mix: weights must be > 0");
    if (!(t.alpha > 0.0))
      throw InvalidDensityError("gaussian-mix: exponents must be > 0");
    if (!finite(t.center))
      throw InvalidDensityError("gaussian-mix: centers must be finite");
  }
  return DensityModel(Payload(std::move(terms)));
}

DensityModel DensityModel::slater(double zeta, double n_electrons) {
  if (!(zeta > 0.0)) throw InvalidDensityError("slater: zeta must be > 0");
  if (!(n_electrons > 0.0))
    throw InvalidDensityError("slater: electron count must be > 0");
  return DensityModel(Payload(SlaterData{zeta, n_electrons}));
}

DensityModel DensityModel::anisotropic_gaussian(Vec3 exponents, double weight) {
  if (!(exponents.x > 0.0 && exponents.y > 0.0 && exponents.z > 0.0))
    throw InvalidDensityError("aniso: exponents must be > 0");
  if (!(weight > 0.0)) throw InvalidDensityError("aniso: weight must be > 0");
  return DensityModel(Payload(AnisoData{exponents, weight}));
}

DensityModel::Kind DensityModel::kind() const {
  if (std::holds_alternative<std::vector<GaussianTerm>>(payload_))
    return Kind::GaussianMix;
  if (std::holds_alternative<SlaterData>(payload_)) return Kind::Slater;
  return Kind::AnisotropicGaussian;
}

double DensityModel::value(const Vec3& r) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          double n = 0.0;
          for (const auto& t : d)
            n += t.weight * gaussian_prefactor(t.alpha) *
                 std::exp(-t.alpha * norm2(r - t.center));
          return n;
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          return d.n_electrons * (d.zeta * d.zeta * d.zeta / M_PI) *
                 std::exp(-2.0 * d.zeta * norm(r));
        } else {
          const Vec3& a = d.exponents;
          return d.weight * std::sqrt(a.x * a.y * a.z / (M_PI * M_PI * M_PI)) *
                 std::exp(-a.x * r.x * r.x - a.y * r.y * r.y - a.z * r.z * r.z);
        }
      },
      payload_);
}

Vec3 DensityModel::gradient(const Vec3& r) const {
  return std::visit(
      [&](const auto& d) -> Vec3 {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          Vec3 g{};
          for (const auto& t : d) {
            const Vec3 u = r - t.center;
            const double e = t.weight * gaussian_prefactor(t.alpha) *
                             std::exp(-t.alpha * norm2(u));
            g += u * (-2.0 * t.alpha * e);
          }
          return g;
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          const double rho = norm(r);
          if (rho == 0.0) return Vec3{}; // cusp; direction undefined
          return r * (-2.0 * d.zeta / rho * value(r));
        } else {
          const Vec3& a = d.exponents;
          const double n = value(r);
          return {-2.0 * a.x * r.x * n, -2.0 * a.y * r.y * n,
                  -2.0 * a.z * r.z * n};
        }
      },
      payload_);
}

double DensityModel::laplacian(const Vec3& r) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          double lap = 0.0;
          for (const auto& t : d) {
            const Vec3 u = r - t.center;
            const double e = t.weight * gaussian_prefactor(t.alpha) *
                             std::exp(-t.alpha * norm2(u));
            lap += e * (4.0 * t.alpha * t.alpha * norm2(u) - 6.0 * t.alpha);
          }
          return lap;
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          const double rho = norm(r);
          if (rho == 0.0)
            throw SingularPointError("slater laplacian is singular at r = 0");
          const double z = d.zeta;
          return value(r) * (4.0 * z * z - 4.0 * z / rho);
        } else {
          const Vec3& a = d.exponents;
          const double n = value(r);
          double lap = 0.0;
          for (int i = 0; i < 3; ++i)
            lap += (4.0 * a[i] * a[i] * r[i] * r[i] - 2.0 * a[i]) * n;
          return lap;
        }
      },
      payload_);
}

Mat3 DensityModel::hessian(const Vec3& r) const {
  return std::visit(
      [&](const auto& d) -> Mat3 {
        using T = std::decay_t<decltype(d)>;
        Mat3 h{};
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          for (const auto& t : d) {
            const Vec3 u = r - t.center;
            const double e = t.weight * gaussian_prefactor(t.alpha) *
                             std::exp(-t.alpha * norm2(u));
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j)
                h[i][j] += e * (4.0 * t.alpha * t.alpha * u[i] * u[j] -
                                (i == j ? 2.0 * t.alpha : 0.0));
          }
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          const double rho = norm(r);
          if (rho == 0.0)
            throw SingularPointError("slater hessian is singular at r = 0");
          const double n = value(r);
          const double z = d.zeta;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              h[i][j] = n * (4.0 * z * z * r[i] * r[j] / (rho * rho) +
                             2.0 * z * r[i] * r[j] / (rho * rho * rho) -
                             (i == j ? 2.0 * z / rho : 0.0));
        } else {
          const Vec3& a = d.exponents;
          const double n = value(r);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              h[i][j] = n * (4.0 * a[i] * a[j] * r[i] * r[j] -
                             (i == j ? 2.0 * a[i] : 0.0));
        }
        return h;
      },
      payload_);
}

DensityData DensityModel::evaluate(const Vec3& r) const {
  require_finite_point(r);
  return {value(r), gradient(r), laplacian(r)};
}

double DensityModel::analytic_norm() const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          double n = 0.0;
          for (const auto& t : d) n += t.weight;
          return n;
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          return d.n_electrons;
        } else {
          return d.weight;
        }
      },
      payload_);
}

bool DensityModel::spherically_symmetric() const {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          return std::all_of(d.begin(), d.end(), [](const GaussianTerm& t) {
            return norm2(t.center) == 0.0;
          });
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          return true;
        } else {
          return d.exponents.x == d.exponents.y &&
                 d.exponents.y == d.exponents.z;
        }
      },
      payload_);
}

Vec3 DensityModel::centroid() const {
  return std::visit(
      [&](const auto& d) -> Vec3 {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          Vec3 c{};
          double w = 0.0;
          for (const auto& t : d) {
            c += t.center * t.weight;
            w += t.weight;
          }
          return c / w;
        } else {
          return Vec3{};
        }
      },
      payload_);
}

std::string DensityModel::describe() const {
  return std::visit(
      [&](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::vector<GaussianTerm>>) {
          if (d.size() == 1 && norm2(d[0].center) == 0.0)
            return "gaussian:alpha=" + format_number(d[0].alpha) +
                   ",n=" + format_number(d[0].weight);
          std::ostringstream out;
          out << "gaussian-mix:[";
          for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) out << ";";
            out << format_number(d[i].weight) << ","
                << format_number(d[i].alpha) << ","
                << format_number(d[i].center.x) << ","
                << format_number(d[i].center.y) << ","
                << format_number(d[i].center.z);
          }
          out << "]";
          return out.str();
        } else if constexpr (std::is_same_v<T, SlaterData>) {
          return "slater:zeta=" + format_number(d.zeta) +
                 ",n=" + format_number(d.n_electrons);
        } else {
          return "aniso:ax=" + format_number(d.exponents.x) +
                 ",ay=" + format_number(d.exponents.y) +
                 ",az=" + format_number(d.exponents.z) +
                 ",w=" + format_number(d.weight);
        }
      },
      payload_);
}

const std::vector<GaussianTerm>* DensityModel::gaussian_terms() const {
  return std::get_if<std::vector<GaussianTerm>>(&payload_);
}

// ---------------------------------------------------------------------------
// Mini-language parser

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("density spec: bad number '" + std::string(text) +
                      "' for " + std::string(what));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

// key=value,key=value with a fixed key set
double lookup(std::string_view body, std::string_view key, double fallback,
              bool required) {
  for (std::string_view field : split(body, ',')) {
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("density spec: expected key=value, got '" +
                        std::string(field) + "'");
    if (field.substr(0, eq) == key)
      return parse_double(field.substr(eq + 1), key);
  }
  if (required)
    throw ConfigError("density spec: missing required key '" +
                      std::string(key) + "'");
  return fallback;
}

} // namespace

DensityModel DensityModel::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("density spec '" + std::string(spec) +
                      "': expected '<kind>:<parameters>'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "gaussian") {
    return gaussian(lookup(body, "alpha", 1.0, true), lookup(body, "n", 1.0, false));
  }
  if (kind == "slater") {
    return slater(lookup(body, "zeta", 1.0, true), lookup(body, "n", 1.0, false));
  }
  if (kind == "aniso") {
    return anisotropic_gaussian({lookup(body, "ax", 1.0, true),
                                 lookup(body, "ay", 1.0, true),
                                 lookup(body, "az", 1.0, true)},
                                lookup(body, "w", 1.0, false));
  }
  if (kind == "gaussian-mix") {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw ConfigError("gaussian-mix spec: expected [w,alpha,cx,cy,cz;...]");
    std::vector<GaussianTerm> terms;
    for (std::string_view item : split(body.substr(1, body.size() - 2), ';')) {
      const auto fields = split(item, ',');
      if (fields.size() != 5)
        throw ConfigError("gaussian-mix spec: each term needs 5 numbers "
                          "(w,alpha,cx,cy,cz), got '" +
                          std::string(item) + "'");
      terms.push_back(GaussianTerm{
          parse_double(fields[0], "w"), parse_double(fields[1], "alpha"),
          Vec3{parse_double(fields[2], "cx"), parse_double(fields[3], "cy"),
               parse_double(fields[4], "cz")}});
    }
    return gaussian_mix(std::move(terms));
  }
  throw ConfigError("unknown density kind '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------
// ScaledDensity

ScaledDensity::ScaledDensity(DensityModel base, ScalingParams scaling)
    : base_(std::move(base)), scaling_(scaling) {
  if (!(scaling_.lambda > 0.0))
    throw InvalidScalingError("scaling requires lambda > 0");
  if (!std::isfinite(scaling_.lambda) || !std::isfinite(scaling_.m))
    throw InvalidScalingError("scaling parameters must be finite");
}

double ScaledDensity::value(const Vec3& r) const {
  return std::pow(scaling_.lambda, scaling_.m) * base_.value(r * scaling_.lambda);
}

Vec3 ScaledDensity::gradient(const Vec3& r) const {
  return base_.gradient(r * scaling_.lambda) *
         std::pow(scaling_.lambda, scaling_.m + 1.0);
}

double ScaledDensity::laplacian(const Vec3& r) const {
  return std::pow(scaling_.lambda, scaling_.m + 2.0) *
         base_.laplacian(r * scaling_.lambda);
}

Mat3 ScaledDensity::hessian(const Vec3& r) const {
  Mat3 h = base_.hessian(r * scaling_.lambda);
  const double s = std::pow(scaling_.lambda, scaling_.m + 2.0);
  for (auto& row : h) row = row * s;
  return h;
}

DensityData ScaledDensity::evaluate(const Vec3& r) const {
  require_finite_point(r);
  return {value(r), gradient(r), laplacian(r)};
}

double ScaledDensity::analytic_norm() const {
  return std::pow(scaling_.lambda, scaling_.m - 3.0) * base_.analytic_norm();
}

std::string ScaledDensity::describe() const {
  return "scaled(lambda=" + format_number(scaling_.lambda) +
         ",m=" + format_number(scaling_.m) + "):" + base_.describe();
}

ScaledDensity scale_density(const DensityModel& base, double lambda, double m) {
  return ScaledDensity(base, ScalingParams{lambda, m});
}

ScaledDensity scale_density(const ScaledDensity& base, double lambda, double m) {
  if (base.scaling().m != m)
    throw InvalidScalingError(
        "scaling composition requires matching degrees m");
  return ScaledDensity(base.base(),
                       ScalingParams{base.scaling().lambda * lambda, m});
}

// ---------------------------------------------------------------------------
// Density handle

double Density::value(const Vec3& r) const {
  return std::visit([&](const auto& d) { return d.value(r); }, payload_);
}
Vec3 Density::gradient(const Vec3& r) const {
  return std::visit([&](const auto& d) { return d.gradient(r); }, payload_);
}
double Density::laplacian(const Vec3& r) const {
  return std::visit([&](const auto& d) { return d.laplacian(r); }, payload_);
}
Mat3 Density::hessian(const Vec3& r) const {
  return std::visit([&](const auto& d) { return d.hessian(r); }, payload_);
}
DensityData Density::evaluate(const Vec3& r) const {
  return std::visit([&](const auto& d) { return d.evaluate(r); }, payload_);
}
double Density::analytic_norm() const {
  return std::visit([](const auto& d) { return d.analytic_norm(); }, payload_);
}
bool Density::spherically_symmetric() const {
  return std::visit([](const auto& d) { return d.spherically_symmetric(); },
                    payload_);
}
Vec3 Density::centroid() const {
  return std::visit([](const auto& d) { return d.centroid(); }, payload_);
}
std::string Density::describe() const {
  return std::visit([](const auto& d) { return d.describe(); }, payload_);
}

const DensityModel& Density::model() const {
  if (const auto* m = std::get_if<DensityModel>(&payload_)) return *m;
  return std::get<ScaledDensity>(payload_).base();
}

bool Density::scaled() const {
  return std::holds_alternative<ScaledDensity>(payload_);
}

ScalingParams Density::scaling() const {
  if (const auto* s = std::get_if<ScaledDensity>(&payload_))
    return s->scaling();
  return ScalingParams{};
}

Density scale_density(const Density& base, double lambda, double m) {
  if (base.scaled())
    return Density(
        scale_density(ScaledDensity(base.model(), base.scaling()), lambda, m));
  return Density(scale_density(base.model(), lambda, m));
}

// ---------------------------------------------------------------------------
// Scaling identities

ScalingIdentityResiduals check_scaling_identities(const ScaledDensity& density,
                                                  const Vec3& r, double h) {
  if (!(h > 0.0)) throw SampleError("check_scaling_identities: h must be > 0");
  require_finite_point(r);
  const double lambda = density.scaling().lambda;
  const double m = density.scaling().m;
  const ScaledDensity plus(density.base(), {lambda + h, m});
  const ScaledDensity minus(density.base(), {lambda - h, m});

  ScalingIdentityResiduals res;

  const double dn_dlambda = (plus.value(r) - minus.value(r)) / (2.0 * h);
  const double n = density.value(r);
  const Vec3 g = density.gradient(r);
  res.value_residual = std::abs(lambda * dn_dlambda - (m * n + dot(r, g)));

  const Vec3 gp = plus.gradient(r);
  const Vec3 gm = minus.gradient(r);
  const Mat3 hess = density.hessian(r);
  const Vec3 hr = mat_vec(hess, r); // sum_j x_j d_j d_i n
  for (int i = 0; i < 3; ++i) {
    const double dgi_dlambda = (gp[i] - gm[i]) / (2.0 * h);
    const double rhs = (m + 1.0) * g[i] + hr[i];
    res.gradient_residual =
        std::max(res.gradient_residual, std::abs(lambda * dgi_dlambda - rhs));
  }
  return res;
}

} // namespace scalelab
