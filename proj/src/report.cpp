// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#include "scalelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scalelab/errors.hpp"

namespace scalelab {

namespace {

// Report documents are compared byte-for-byte in determinism checks, so
// layout and float formatting (17 significant digits) are fixed here.
std::string fmt_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

class JsonWriter {
public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& name) {
    separate();
    indent();
    out_ << '"' << escape(name) << "\": ";
    pending_key_ = true;
  }

  void value(double v) { raw(fmt_double(v)); }
  void value(int v) { raw(std::to_string(v)); }
  void value(std::uint64_t v) { raw(std::to_string(v)); }
  void value(bool v) { raw(v ? "true" : "false"); }
  void value(const std::string& v) { raw('"' + escape(v) + '"'); }
  void value(const char* v) { value(std::string(v)); }
  void value_raw(const std::string& preformatted) { raw(preformatted); }
  void null() { raw("null"); }

  template <class T>
  void value(const std::vector<T>& values) {
    begin_array();
    for (const T& v : values) value(v);
    end_array();
  }

  void field(const std::string& name, double v) { key(name); value(v); }
  void field(const std::string& name, int v) { key(name); value(v); }
  void field(const std::string& name, std::uint64_t v) { key(name); value(v); }
  void field(const std::string& name, bool v) { key(name); value(v); }
  void field(const std::string& name, const std::string& v) {
    key(name);
    value(v);
  }
  void field_or_null(const std::string& name, const std::string& v) {
    key(name);
    if (v.empty()) null();
    else value(v);
  }

private:
  void open(char c) {
    if (!pending_key_) {
      separate();
      indent();
    }
    pending_key_ = false;
    out_ << c;
    first_.push_back(true);
    depth_ += 1;
  }

  void close(char c) {
    depth_ -= 1;
    if (!first_.back()) {
      out_ << '\n';
      indent_raw();
    }
    first_.pop_back();
    out_ << c;
    if (!first_.empty()) first_.back() = false;
  }

  void raw(const std::string& text) {
    if (!pending_key_) {
      separate();
      indent();
    }
    pending_key_ = false;
    out_ << text;
    if (!first_.empty()) first_.back() = false;
  }

  void separate() {
    if (!first_.empty() && !first_.back()) out_ << ',';
    if (!first_.empty()) out_ << '\n';
  }

  void indent() { indent_raw(); }
  void indent_raw() {
    for (int i = 0; i < depth_; ++i) out_ << "  ";
  }

  std::ostream& out_;
  std::vector<bool> first_;
  int depth_ = 0;
  bool pending_key_ = false;
};

void write_config(JsonWriter& w, const RunConfig& cfg) {
  w.begin_object();
  w.key("functionals");
  w.value(cfg.functionals);
  w.key("densities");
  w.value(cfg.densities);
  w.key("m_set");
  w.value(cfg.m_set);
  w.key("lambda_set");
  w.value(cfg.lambda_set);
  w.key("checks");
  {
    std::vector<std::string> names;
    for (CheckKind c : cfg.checks) names.push_back(check_name(c));
    w.value(names);
  }
  w.field("seed", cfg.seed);
  w.field("pde_points", cfg.pde_points);
  w.field("box_count", cfg.box_count);
  w.key("box_lambdas");
  w.value(cfg.box_lambdas);
  w.key("quadrature");
  w.begin_object();
  w.field("radial_panels", cfg.quadrature.radial_panels);
  w.field("radial_nodes", cfg.quadrature.radial_nodes);
  w.field("box_nodes", cfg.quadrature.box_nodes);
  w.field("tail_tolerance", cfg.quadrature.tail_tolerance);
  w.field("r_max", cfg.quadrature.r_max);
  w.end_object();
  w.key("thresholds");
  w.begin_object();
  const Thresholds& t = cfg.thresholds;
  w.field("homogeneity_p", t.homogeneity_p);
  w.field("homogeneity_rms", t.homogeneity_rms);
  w.field("m0", t.m0);
  w.field("q", t.q);
  w.field("euler", t.euler);
  w.field("representation", t.representation);
  w.field("invariance_condition", t.invariance_condition);
  w.field("pde_max", t.pde_max);
  w.field("box", t.box);
  w.field("form_spread", t.form_spread);
  w.field("form_residual", t.form_residual);
  w.end_object();
  w.field("out_json", cfg.out_json);
  w.field("out_csv", cfg.out_csv);
  w.end_object();
}

} // namespace

std::string to_json(const Report& report) {
  std::ostringstream out;
  JsonWriter w(out);
  w.begin_object();
  w.field("version", report.version);
  w.key("config");
  write_config(w, report.config);

  w.key("homogeneity");
  w.begin_array();
  for (const auto& e : report.homogeneity) {
    w.begin_object();
    w.field("functional", e.functional);
    w.field("density", e.density);
    w.field("m", e.m);
    w.field("p_hat", e.p_hat);
    w.field("declared_p", e.declared_p);
    w.field("residual_rms", e.residual_rms);
    w.field("pass", e.pass);
    w.field("errored", e.errored);
    w.field_or_null("message", e.message);
    w.end_object();
  }
  w.end_array();

  w.key("invariance");
  w.begin_array();
  for (const auto& e : report.invariance) {
    w.begin_object();
    w.field("functional", e.functional);
    w.field("density", e.density);
    w.field("m0_hat", e.m0_hat);
    w.field("declared_m0", e.declared_m0);
    w.field("q_hat", e.q_hat);
    w.field("declared_q", e.declared_q);
    w.field("k_hat", e.k_hat);
    w.field("fit_residual", e.fit_residual);
    w.field("condition_residual", e.condition_residual);
    w.field("degenerate", e.degenerate);
    w.field("pass", e.pass);
    w.field("errored", e.errored);
    w.field_or_null("message", e.message);
    w.end_object();
  }
  w.end_array();

  auto write_identity = [&](const std::vector<IdentityEntry>& entries) {
    w.begin_array();
    for (const auto& e : entries) {
      w.begin_object();
      w.field("functional", e.functional);
      w.field("density", e.density);
      w.field("m", e.m);
      w.field("rel_error", e.rel_error);
      w.field("pass", e.pass);
      w.field("skipped", e.skipped);
      w.field("errored", e.errored);
      w.field_or_null("message", e.message);
      w.end_object();
    }
    w.end_array();
  };
  w.key("euler");
  write_identity(report.euler);
  w.key("representation");
  write_identity(report.representation);

  w.key("pde_residuals");
  w.begin_array();
  for (const auto& e : report.pde_residuals) {
    w.begin_object();
    w.field("equation_id", e.equation_id);
    w.field("functional", e.functional);
    w.field("density", e.density);
    w.field("m0", e.m0);
    w.field("sample_points", e.sample_points);
    w.field("max_rel_residual", e.max_rel_residual);
    w.field("mean_rel_residual", e.mean_rel_residual);
    w.field("normalization", e.normalization);
    w.field("seed", e.seed);
    w.field("pass", e.pass);
    w.field("errored", e.errored);
    w.field_or_null("message", e.message);
    w.end_object();
  }
  w.end_array();

  w.key("box_invariance");
  w.begin_array();
  for (const auto& e : report.box_invariance) {
    w.begin_object();
    w.field("functional", e.functional);
    w.field("density", e.density);
    w.key("box_lo");
    w.value(std::vector<double>{e.lo.x, e.lo.y, e.lo.z});
    w.key("box_hi");
    w.value(std::vector<double>{e.hi.x, e.hi.y, e.hi.z});
    w.field("lambda", e.lambda);
    w.field("rel_error", e.rel_error);
    w.field("pass", e.pass);
    w.field("skipped", e.skipped);
    w.field("errored", e.errored);
    w.field_or_null("message", e.message);
    w.end_object();
  }
  w.end_array();

  w.key("forms");
  w.begin_array();
  for (const auto& e : report.forms) {
    w.begin_object();
    w.field("form", e.form);
    w.field("functional", e.functional);
    w.field("density", e.density);
    if (e.has_constant) {
      w.field("c_hat", e.c_hat);
      w.field("expected_c", e.expected_c);
      w.field("spread", e.spread);
    } else {
      w.field("max_rel_residual", e.max_rel_residual);
    }
    w.field("sample_points", e.sample_points);
    w.field("seed", e.seed);
    w.field("pass", e.pass);
    w.field("errored", e.errored);
    w.field_or_null("message", e.message);
    w.end_object();
  }
  w.end_array();

  w.field("all_passed", report.all_passed);

  // volatile fields last, each on a single line, so determinism checks can
  // strip them textually
  w.key("timings");
  {
    std::ostringstream t;
    t << "{";
    for (std::size_t i = 0; i < report.timings.size(); ++i) {
      if (i) t << ", ";
      t << '"' << report.timings[i].first
        << "\": " << fmt_double(report.timings[i].second);
    }
    t << "}";
    // emit preformatted to keep the object on one line
    w.value_raw(t.str());
  }
  w.field("timestamp", report.timestamp);
  w.end_object();
  out << "\n";
  return out.str();
}

namespace {

// density specs carry commas; quote per RFC 4180
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

} // namespace

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "functional,density,m,lambda,F,lnlambda,lnabsF\n";
  for (const SweepRow& row : report.sweep) {
    out << csv_field(row.functional) << ',' << csv_field(row.density) << ','
        << fmt_double(row.m) << ',' << fmt_double(row.lambda) << ','
        << fmt_double(row.value) << ',' << fmt_double(row.ln_lambda) << ','
        << fmt_double(row.ln_abs_value) << '\n';
  }
  return out.str();
}

void emit(const Report& report) {
  auto write_file = [](const std::string& path, const std::string& payload) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << payload;
    if (!out) throw IoError("write to '" + path + "' failed");
  };
  write_file(report.config.out_json, to_json(report));
  write_file(report.config.out_csv, to_csv(report));
}

} // namespace scalelab
