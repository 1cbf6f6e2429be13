#include "screw/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>

#include "screw/errors.hpp"

namespace screw {
namespace {

using nlohmann::json;

// NaN and infinities have no JSON literal; they travel as strings.
json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double get_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw parse_error("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

template <class F>
auto guarded(const std::string& text, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw parse_error(std::string("report: ") + e.what());
  }
}

json identity_json(const IdentityReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"label", s.label},
                       {"z_re", num(s.point.real())},
                       {"z_im", num(s.point.imag())},
                       {"lhs_re", num(s.lhs.real())},
                       {"lhs_im", num(s.lhs.imag())},
                       {"rhs_re", num(s.rhs.real())},
                       {"rhs_im", num(s.rhs.imag())},
                       {"residual", num(s.residual)}});
  return {{"identity_id", r.identity_id},
          {"samples", samples},
          {"max_residual", num(r.max_residual)},
          {"threshold", num(r.threshold)},
          {"relative", r.relative},
          {"pass", r.pass},
          {"budget",
           {{"quadrature", num(r.budget.quadrature)},
            {"truncation", num(r.budget.truncation)},
            {"tail", num(r.budget.tail)},
            {"rhs", num(r.budget.rhs)}}},
          {"note", r.note}};
}

IdentityReport identity_from(const json& j) {
  IdentityReport r;
  r.identity_id = j.at("identity_id").get<std::string>();
  for (const auto& s : j.at("samples"))
    r.samples.push_back({s.value("label", std::string{}),
                         {get_num(s.at("z_re")), get_num(s.at("z_im"))},
                         {get_num(s.at("lhs_re")), get_num(s.at("lhs_im"))},
                         {get_num(s.at("rhs_re")), get_num(s.at("rhs_im"))},
                         get_num(s.at("residual"))});
  r.max_residual = get_num(j.at("max_residual"));
  r.threshold = get_num(j.at("threshold"));
  r.relative = j.at("relative").get<bool>();
  r.pass = j.at("pass").get<bool>();
  const auto& b = j.at("budget");
  r.budget = {get_num(b.at("quadrature")), get_num(b.at("truncation")), get_num(b.at("tail")), get_num(b.at("rhs"))};
  r.note = j.value("note", std::string{});
  return r;
}

json phi_json(const PhiBreakdown& p) {
  auto c = [](cplx v) { return json::array({num(v.real()), num(v.imag())}); };
  return {{"t", num(p.t)},           {"pole_term", c(p.pole_term)},     {"prime_term", c(p.prime_term)},
          {"linear_term", c(p.linear_term)}, {"gamma_term", c(p.gamma_term)}, {"total", c(p.total)}};
}

PhiBreakdown phi_from(const json& j) {
  auto c = [](const json& a) { return cplx{get_num(a.at(0)), get_num(a.at(1))}; };
  return {get_num(j.at("t")),          c(j.at("pole_term")),  c(j.at("prime_term")),
          c(j.at("linear_term")),      c(j.at("gamma_term")), c(j.at("total"))};
}

std::string csv_complex(cplx v) { return format_double(v.real()) + "," + format_double(v.imag()); }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const IdentityReport& r, int indent) { return identity_json(r).dump(indent); }

std::string to_json(const std::vector<IdentityReport>& rs, int indent) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(identity_json(r));
  return a.dump(indent);
}

std::string to_json(const ScanReport& r, int indent) {
  json grid = json::array(), vals = json::array(), tols = json::array(), viol = json::array();
  for (double t : r.t_grid) grid.push_back(num(t));
  for (double v : r.values) vals.push_back(num(v));
  for (double v : r.tolerances) tols.push_back(num(v));
  for (const auto& v : r.violations) viol.push_back({{"t", num(v.t)}, {"value", num(v.value)}});
  json j = {{"evaluator", to_string(r.evaluator)},
            {"t_grid", grid},
            {"values", vals},
            {"tolerances", tols},
            {"min_value", num(r.min_value)},
            {"min_location", num(r.min_location)},
            {"refined_min_value", num(r.refined_min_value)},
            {"refined_min_location", num(r.refined_min_location)},
            {"violations", viol},
            {"tolerance", r.tolerance ? num(*r.tolerance) : json(nullptr)},
            {"assumption", r.assumption}};
  return j.dump(indent);
}

ScanReport scan_report_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    ScanReport r;
    r.evaluator = evaluator_from_string(j.at("evaluator").get<std::string>());
    for (const auto& v : j.at("t_grid")) r.t_grid.push_back(get_num(v));
    for (const auto& v : j.at("values")) r.values.push_back(get_num(v));
    for (const auto& v : j.at("tolerances")) r.tolerances.push_back(get_num(v));
    r.min_value = get_num(j.at("min_value"));
    r.min_location = get_num(j.at("min_location"));
    r.refined_min_value = get_num(j.at("refined_min_value"));
    r.refined_min_location = get_num(j.at("refined_min_location"));
    for (const auto& v : j.at("violations")) r.violations.push_back({get_num(v.at("t")), get_num(v.at("value"))});
    if (!j.at("tolerance").is_null()) r.tolerance = get_num(j.at("tolerance"));
    r.assumption = j.value("assumption", std::string{});
    return r;
  });
}

std::string to_json(const MomentTable& t, int indent) {
  json rows = json::array();
  for (const auto& e : t.entries)
    rows.push_back({{"n", e.n},
                    {"mu", num(e.mu)},
                    {"mu_raw", num(e.mu_raw)},
                    {"cutoff_T", num(e.cutoff_T)},
                    {"zero_count", e.zero_count},
                    {"stability", num(e.stability)},
                    {"quad_error", num(e.quad_error)}});
  return json{{"entries", rows}, {"warnings", t.warnings}}.dump(indent);
}

MomentTable moment_table_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    MomentTable t;
    for (const auto& e : j.at("entries"))
      t.entries.push_back({e.at("n").get<unsigned>(), get_num(e.at("mu")), get_num(e.at("mu_raw")),
                           get_num(e.at("cutoff_T")), e.at("zero_count").get<std::size_t>(), get_num(e.at("stability")),
                           get_num(e.at("quad_error"))});
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
    return t;
  });
}

std::string to_json(const std::vector<PhiBreakdown>& rows, int indent) {
  json a = json::array();
  for (const auto& p : rows) a.push_back(phi_json(p));
  return a.dump(indent);
}

std::vector<PhiBreakdown> phi_rows_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    std::vector<PhiBreakdown> out;
    for (const auto& p : j) out.push_back(phi_from(p));
    return out;
  });
}

IdentityReport identity_report_from_json(const std::string& text) {
  return guarded(text, [](const json& j) { return identity_from(j); });
}

std::vector<IdentityReport> identity_reports_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    std::vector<IdentityReport> out;
    for (const auto& r : j) out.push_back(identity_from(r));
    return out;
  });
}

void write_csv(std::ostream& out, const IdentityReport& r) {
  out << "identity_id,label,z_re,z_im,lhs_re,lhs_im,rhs_re,rhs_im,residual\n";
  for (const auto& s : r.samples)
    out << r.identity_id << ',' << s.label << ',' << csv_complex(s.point) << ',' << csv_complex(s.lhs) << ','
        << csv_complex(s.rhs) << ',' << format_double(s.residual) << '\n';
}

void write_csv(std::ostream& out, const ScanReport& r) {
  out << "t,value,tolerance,violation\n";
  for (std::size_t i = 0; i < r.t_grid.size(); ++i)
    out << format_double(r.t_grid[i]) << ',' << format_double(r.values[i]) << ',' << format_double(r.tolerances[i])
        << ',' << (r.values[i] < -r.tolerances[i] ? 1 : 0) << '\n';
}

void write_csv(std::ostream& out, const MomentTable& t) {
  out << "n,mu,mu_raw,cutoff_T,zero_count,stability,quad_error\n";
  for (const auto& e : t.entries)
    out << e.n << ',' << format_double(e.mu) << ',' << format_double(e.mu_raw) << ',' << format_double(e.cutoff_T)
        << ',' << e.zero_count << ',' << format_double(e.stability) << ',' << format_double(e.quad_error) << '\n';
}

void write_csv(std::ostream& out, std::span<const PhiBreakdown> rows) {
  out << "t,pole_re,pole_im,prime_re,prime_im,linear_re,linear_im,gamma_re,gamma_im,total_re,total_im\n";
  for (const auto& p : rows)
    out << format_double(p.t) << ',' << csv_complex(p.pole_term) << ',' << csv_complex(p.prime_term) << ','
        << csv_complex(p.linear_term) << ',' << csv_complex(p.gamma_term) << ',' << csv_complex(p.total) << '\n';
}

}  // namespace screw
