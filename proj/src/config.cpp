// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "scalelab/errors.hpp"

namespace scalelab {

std::string check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::Homogeneity: return "homogeneity";
    case CheckKind::Invariance: return "invariance";
    case CheckKind::Euler: return "euler";
    case CheckKind::Representation: return "representation";
    case CheckKind::Pde: return "pde";
    case CheckKind::Box: return "box";
    case CheckKind::Forms: return "forms";
  }
  return "?";
}

CheckKind parse_check(std::string_view name) {
  for (CheckKind kind : all_checks)
    if (name == check_name(kind)) return kind;
  throw ConfigError("unknown check '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// densities carry commas inside one spec, so density lists split on
// whitespace only
std::vector<std::string> tokenize_ws(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double to_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("bad number '" + std::string(text) + "' for " + what);
  return v;
}

long long to_int(std::string_view text, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("bad integer '" + std::string(text) + "' for " + what);
  return v;
}

} // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& tok : tokenize(text))
    out.push_back(to_double(tok, "list entry"));
  return out;
}

std::vector<CheckKind> parse_check_list(std::string_view text) {
  std::vector<CheckKind> out;
  for (const std::string& tok : tokenize(text)) {
    if (tok == "all") {
      out.assign(std::begin(all_checks), std::end(all_checks));
      continue;
    }
    out.push_back(parse_check(tok));
  }
  return out;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (view.front() == '[') {
      if (view.back() != ']')
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": malformed section header");
      section = std::string(trim(view.substr(1, view.size() - 2)));
      continue;
    }
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    const std::string where = section + "." + key;

    if (section == "run") {
      if (key == "functionals") cfg.functionals = tokenize(value);
      else if (key == "densities") cfg.densities = tokenize_ws(value);
      else if (key == "m_set") cfg.m_set = parse_number_list(value);
      else if (key == "lambda_set") cfg.lambda_set = parse_number_list(value);
      else if (key == "checks") cfg.checks = parse_check_list(value);
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(to_int(value, where));
      else if (key == "pde_points")
        cfg.pde_points = static_cast<int>(to_int(value, where));
      else if (key == "box_count")
        cfg.box_count = static_cast<int>(to_int(value, where));
      else if (key == "box_lambdas")
        cfg.box_lambdas = parse_number_list(value);
      else throw ConfigError("unknown config key '" + where + "'");
    } else if (section == "quadrature") {
      if (key == "radial_panels")
        cfg.quadrature.radial_panels = static_cast<int>(to_int(value, where));
      else if (key == "radial_nodes")
        cfg.quadrature.radial_nodes = static_cast<int>(to_int(value, where));
      else if (key == "box_nodes")
        cfg.quadrature.box_nodes = static_cast<int>(to_int(value, where));
      else if (key == "tail_tolerance")
        cfg.quadrature.tail_tolerance = to_double(value, where);
      else if (key == "r_max") cfg.quadrature.r_max = to_double(value, where);
      else throw ConfigError("unknown config key '" + where + "'");
    } else if (section == "thresholds") {
      Thresholds& t = cfg.thresholds;
      if (key == "homogeneity_p") t.homogeneity_p = to_double(value, where);
      else if (key == "homogeneity_rms")
        t.homogeneity_rms = to_double(value, where);
      else if (key == "m0") t.m0 = to_double(value, where);
      else if (key == "q") t.q = to_double(value, where);
      else if (key == "euler") t.euler = to_double(value, where);
      else if (key == "representation")
        t.representation = to_double(value, where);
      else if (key == "invariance_condition")
        t.invariance_condition = to_double(value, where);
      else if (key == "pde_max") t.pde_max = to_double(value, where);
      else if (key == "box") t.box = to_double(value, where);
      else if (key == "form_spread") t.form_spread = to_double(value, where);
      else if (key == "form_residual")
        t.form_residual = to_double(value, where);
      else throw ConfigError("unknown config key '" + where + "'");
    } else if (section == "output") {
      if (key == "json") cfg.out_json = value;
      else if (key == "csv") cfg.out_csv = value;
      else throw ConfigError("unknown config key '" + where + "'");
    } else {
      throw ConfigError("unknown config section '" + section + "'");
    }
  }
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* seed = std::getenv("SCALELAB_SEED")) {
    cfg.seed = static_cast<std::uint64_t>(to_int(seed, "SCALELAB_SEED"));
  }
}

} // namespace scalelab
