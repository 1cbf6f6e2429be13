#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "screw/criterion.hpp"
#include "screw/transform_lab.hpp"
#include "screw/zero_free.hpp"

namespace screw {

// JSON documents.  Doubles are written with round-trip precision, so
// parsing an emitted document gives back an equal object.

std::string to_json(const IdentityReport& r, int indent = 2);
std::string to_json(const std::vector<IdentityReport>& rs, int indent = 2);
std::string to_json(const ScanReport& r, int indent = 2);
std::string to_json(const MomentTable& t, int indent = 2);
std::string to_json(const std::vector<PhiBreakdown>& rows, int indent = 2);

IdentityReport identity_report_from_json(const std::string& text);
std::vector<IdentityReport> identity_reports_from_json(const std::string& text);
ScanReport scan_report_from_json(const std::string& text);
MomentTable moment_table_from_json(const std::string& text);
std::vector<PhiBreakdown> phi_rows_from_json(const std::string& text);

// CSV with a header row and 17 significant digits.

void write_csv(std::ostream& out, const IdentityReport& r);
void write_csv(std::ostream& out, const ScanReport& r);
void write_csv(std::ostream& out, const MomentTable& t);
/// t, pole_re, pole_im, prime_re, prime_im, linear_re, linear_im, gamma_re, gamma_im, total_re, total_im
void write_csv(std::ostream& out, std::span<const PhiBreakdown> rows);

/// %.17g
std::string format_double(double x);

}  // namespace screw
