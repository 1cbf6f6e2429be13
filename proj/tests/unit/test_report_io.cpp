#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "screw/errors.hpp"
#include "screw/report_io.hpp"

using namespace screw;

namespace {

IdentityReport sample_report() {
  IdentityReport r;
  r.identity_id = "g_laplace";
  r.samples = {{"", cplx{0.0, 2.0}, cplx{0.1 / 3.0, -1e-300}, cplx{1.0 / 7.0, 2.0}, 1.0 / 3.0},
               {"pole", cplx{-1.0, 2.5}, cplx{std::nextafter(1.0, 2.0), 0.0}, cplx{}, 5e-17}};
  r.threshold = 1e-5;
  r.relative = true;
  r.budget = {1e-9, 2e-12, 3.3e-7, 0.0};
  r.note = "a \"quoted\" note";
  r.finalize();
  return r;
}

}  // namespace

TEST(ReportJson, IdentityRoundTrip) {
  const auto r = sample_report();
  EXPECT_EQ(identity_report_from_json(to_json(r)), r);
  const std::vector<IdentityReport> many{r, r};
  EXPECT_EQ(identity_reports_from_json(to_json(many)), many);
  EXPECT_FALSE(r.pass);
}

TEST(ReportJson, IdentityFields) {
  const auto text = to_json(sample_report());
  for (const char* key : {"identity_id", "samples", "z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual",
                          "max_residual", "pass"})
    EXPECT_NE(text.find(key), std::string::npos) << key;
}

TEST(ReportJson, ScanRoundTrip) {
  ScanReport s;
  s.evaluator = Evaluator::zero_free;
  s.t_grid = {0.0, 0.01, 0.02};
  s.values = {0.0, -1.0 / 3.0, 1e-320};
  s.tolerances = {1e-12, 2e-12, 3e-12};
  s.min_value = -1.0 / 3.0;
  s.min_location = 0.01;
  s.refined_min_value = -0.34;
  s.refined_min_location = 0.0123;
  s.violations = {{0.01, -1.0 / 3.0}};
  s.assumption = "no real zeros";
  EXPECT_EQ(scan_report_from_json(to_json(s)), s);
  s.tolerance = 0.5;
  EXPECT_EQ(scan_report_from_json(to_json(s)), s);
}

TEST(ReportJson, MomentRoundTripWithNaN) {
  MomentTable t;
  t.entries = {{0, 8.0, 7.9, 1419.4, 1000, std::numeric_limits<double>::quiet_NaN(), 1e-13},
               {0, 8.01, 8.0, 9877.7, 10000, 1.0 / 801.0, 2e-13}};
  t.warnings = {"moment n = 0 changed"};
  EXPECT_EQ(moment_table_from_json(to_json(t)), t);
  t.entries[1].quad_error = std::numeric_limits<double>::infinity();
  EXPECT_EQ(moment_table_from_json(to_json(t)), t);
}

TEST(ReportJson, PhiRowsRoundTrip) {
  std::vector<PhiBreakdown> rows(2);
  rows[1] = {1.5, cplx{1.0 / 3.0}, cplx{-2.0, 1e-17}, cplx{0.7}, cplx{0.1, -0.2}, cplx{}};
  rows[1].total = rows[1].pole_term + rows[1].prime_term + rows[1].linear_term + rows[1].gamma_term;
  EXPECT_EQ(phi_rows_from_json(to_json(rows)), rows);
}

TEST(ReportJson, MalformedInput) {
  EXPECT_THROW(identity_report_from_json("{"), parse_error);
  EXPECT_THROW(scan_report_from_json("[]"), parse_error);
  EXPECT_THROW(moment_table_from_json(R"({"entries":[{"n":"x"}]})"), parse_error);
}

TEST(ReportCsv, PhiColumns) {
  std::vector<PhiBreakdown> rows(1);
  rows[0].t = 0.5;
  rows[0].total = cplx{1.0 / 3.0, 0.0};
  std::ostringstream out;
  write_csv(out, rows);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(header, "t,pole_re,pole_im,prime_re,prime_im,linear_re,linear_im,gamma_re,gamma_im,total_re,total_im");
  EXPECT_NE(line.find("0.33333333333333331"), std::string::npos);
}

TEST(ReportCsv, ScanAndMomentsHaveHeaders) {
  ScanReport s;
  s.t_grid = {0.0};
  s.values = {0.0};
  s.tolerances = {0.0};
  std::ostringstream a;
  write_csv(a, s);
  EXPECT_EQ(a.str().substr(0, 1), "t");
  MomentTable m;
  m.entries = {{1, 2.0, 2.0, 10.0, 5, 0.0, 0.0}};
  std::ostringstream b;
  write_csv(b, m);
  EXPECT_EQ(b.str().substr(0, 2), "n,");
  std::ostringstream c;
  write_csv(c, sample_report());
  EXPECT_NE(c.str().find("residual"), std::string::npos);
}

TEST(FormatDouble, RoundTrips) {
  for (const double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 4.9e-324}) EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
