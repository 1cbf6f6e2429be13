// screwctl: command-line front end for the screw-function library.
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "screw/coefficients.hpp"
#include "screw/criterion.hpp"
#include "screw/errors.hpp"
#include "screw/lfunction.hpp"
#include "screw/report_io.hpp"
#include "screw/transform_lab.hpp"
#include "screw/zero_free.hpp"
#include "screw/zeros.hpp"

namespace {

using namespace screw;

constexpr int kExitFailure = 1;  // violations or failed identities
constexpr int kExitError = 2;    // bad input or violated precondition

struct Grid {
  double start = 0, stop = 0, step = 1;
};

Grid parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw precondition_error("grid '" + s + "': expected start:stop:step");
    }
  }
  if (parts.size() == 1) return {parts[0], parts[0], 1.0};
  if (parts.size() != 3) throw precondition_error("grid '" + s + "': expected start:stop:step");
  return {parts[0], parts[1], parts[2]};
}

double parse_real(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw precondition_error("cannot parse complex number '" + whole + "'");
  return v;
}

// "2i", "1+2i", "-1-0.5i", "3"
cplx parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  const std::string whole = s;
  if (s.empty() || s.back() != 'i') return {parse_real(s, whole), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, whole), parse_real(im, whole)};
}

std::vector<cplx> parse_z_list(const std::string& s) {
  std::vector<cplx> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok));
  if (out.empty()) throw precondition_error("empty z sample list");
  return out;
}

struct Common {
  std::string spec = "zeta";
  std::string zeros;
  std::string zeros_format = "plain";
  std::string mirror = "auto";
  std::string format = "csv";
  std::string output;
  double tol = 1e-10;
};

LFunctionSpec load_spec(const std::string& src) {
  if (auto s = find_builtin(src)) return *s;
  if (std::filesystem::exists(src)) return load_spec_file(src);
  throw precondition_error("unknown spec '" + src + "': not a built-in id and no such file");
}

std::optional<ZeroMultiset> load_zeros(const Common& c, const LFunctionSpec& spec) {
  if (c.zeros.empty()) return std::nullopt;
  ZeroFormat fmt;
  if (c.zeros_format == "plain" || c.zeros_format == "plain-imag") fmt = ZeroFormat::plain_imag;
  else if (c.zeros_format == "csv" || c.zeros_format == "csv-complex") fmt = ZeroFormat::csv_complex;
  else throw precondition_error("unknown zeros format '" + c.zeros_format + "'");
  bool mirrored = fmt == ZeroFormat::plain_imag;
  if (c.mirror == "yes") mirrored = true;
  else if (c.mirror == "no") mirrored = false;
  else if (c.mirror != "auto") throw precondition_error("--mirror takes yes, no or auto");
  auto zs = ingest_zeros(c.zeros, fmt, mirrored, spec.gamma.degree());
  if (spec.m0 > zs.m0()) {
    std::vector<Zero> v(zs.zeros().begin(), zs.zeros().end());
    zs = ZeroMultiset(std::move(v), spec.m0, zs.mirrored(), zs.source(), zs.tail_model(), zs.degree());
  }
  return zs;
}

ZeroMultiset require_zeros(const Common& c, const LFunctionSpec& spec) {
  auto z = load_zeros(c, spec);
  if (!z) throw precondition_error("zeros required: pass --zeros <file>");
  return *z;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw precondition_error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

bool want_json(const Common& c) {
  if (c.format == "json") return true;
  if (c.format == "csv") return false;
  throw precondition_error("--format takes csv or json");
}

void add_common(CLI::App* sub, Common& c, bool zeros, bool tol = true) {
  sub->add_option("--spec", c.spec, "built-in id (zeta, zeta-dup, dirichlet:<d>) or spec JSON file");
  if (zeros) {
    sub->add_option("--zeros", c.zeros, "zero file");
    sub->add_option("--zeros-format", c.zeros_format, "plain (imaginary parts) or csv (re,im[,mult])");
    sub->add_option("--mirror", c.mirror, "yes, no or auto (yes for plain files)");
  }
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("-o,--output", c.output, "output file (default stdout)");
  if (tol) sub->add_option("--tol", c.tol, "evaluator tolerance");
}

// -- commands -----------------------------------------------------------------

int cmd_catalog(bool json) {
  const auto cat = builtin_catalog();
  if (json) {
    std::cout << "[\n";
    for (std::size_t i = 0; i < cat.size(); ++i) std::cout << spec_to_json(cat[i]) << (i + 1 < cat.size() ? ",\n" : "\n");
    std::cout << "]\n";
    return 0;
  }
  std::cout << "id,m_F,Q,degree,factors,self_dual\n";
  for (const auto& s : cat) {
    std::ostringstream f;
    for (std::size_t j = 0; j < s.gamma.factors.size(); ++j) {
      const auto& g = s.gamma.factors[j];
      f << (j ? " " : "") << "Gamma(" << g.lambda << "s+" << g.mu.real() << (g.mu.imag() != 0 ? "+..i" : "") << ")";
    }
    std::cout << s.id << ',' << s.gamma.m_F << ',' << format_double(s.gamma.Q) << ',' << s.gamma.degree() << ','
              << f.str() << ',' << (s.self_dual ? "yes" : "no") << '\n';
  }
  return 0;
}

int cmd_eval(const Common& c, const std::string& which, const std::string& grid_s) {
  if (which != "g" && which != "phi" && which != "both") throw precondition_error("--which takes g, phi or both");
  const auto spec = load_spec(c.spec);
  std::optional<ZeroMultiset> zs;
  if (which != "phi") zs = require_zeros(c, spec);
  const Grid g = parse_grid(grid_s);
  const auto ts = make_grid(g.start, g.stop, g.step);
  const bool json = want_json(c);
  Output out(c.output);
  auto& os = out.os();

  if (which == "phi" && !json) {
    os << "t,value_re,value_im,err_estimate\n";
    for (double t : ts) {
      const auto p = phi_F(t, spec, c.tol);
      os << format_double(t) << ',' << format_double(p.total.real()) << ',' << format_double(p.total.imag()) << ','
         << format_double(t == 0.0 ? 0.0 : 10.0 * c.tol) << '\n';
    }
    return 0;
  }
  if (which == "phi") {
    std::vector<PhiBreakdown> rows;
    for (double t : ts) rows.push_back(phi_F(t, spec, c.tol));
    os << to_json(rows) << '\n';
    return 0;
  }
  const double B = spec.central_B();
  if (!json) os << (which == "g" ? "t,value_re,value_im,err_estimate\n"
                                 : "t,value_re,value_im,err_estimate,phi_re,phi_im,discrepancy,budget\n");
  else os << "[\n";
  int bad = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const auto gv = g_from_zeros(t, *zs, B);
    if (which == "g") {
      if (json)
        os << "  {\"t\": " << format_double(t) << ", \"value_re\": " << format_double(gv.value.real())
           << ", \"value_im\": " << format_double(gv.value.imag())
           << ", \"err_estimate\": " << format_double(gv.tail_estimate) << (i + 1 < ts.size() ? "},\n" : "}\n");
      else
        os << format_double(t) << ',' << format_double(gv.value.real()) << ',' << format_double(gv.value.imag()) << ','
           << format_double(gv.tail_estimate) << '\n';
      continue;
    }
    const auto p = phi_F(t, spec, c.tol);
    const double disc = std::abs(p.total + gv.value);
    const double budget = gv.tail_estimate + 10.0 * c.tol;
    if (disc > budget) ++bad;
    if (json)
      os << "  {\"t\": " << format_double(t) << ", \"value_re\": " << format_double(gv.value.real())
         << ", \"value_im\": " << format_double(gv.value.imag()) << ", \"err_estimate\": "
         << format_double(gv.tail_estimate) << ", \"phi_re\": " << format_double(p.total.real())
         << ", \"phi_im\": " << format_double(p.total.imag()) << ", \"discrepancy\": " << format_double(disc)
         << ", \"budget\": " << format_double(budget) << (i + 1 < ts.size() ? "},\n" : "}\n");
    else
      os << format_double(t) << ',' << format_double(gv.value.real()) << ',' << format_double(gv.value.imag()) << ','
         << format_double(gv.tail_estimate) << ',' << format_double(p.total.real()) << ','
         << format_double(p.total.imag()) << ',' << format_double(disc) << ',' << format_double(budget) << '\n';
  }
  if (json) os << "]\n";
  if (bad) std::cerr << "screwctl eval: " << bad << " rows exceed the error budget\n";
  return bad ? kExitFailure : 0;
}

int cmd_verify(const Common& c, const std::string& z_s, double threshold) {
  const auto spec = load_spec(c.spec);
  const auto zs = load_zeros(c, spec);
  const auto z_set = z_s.empty() ? default_z_samples() : parse_z_list(z_s);
  std::vector<IdentityReport> reports;
  if (zs) reports.push_back(check_g_laplace(spec, *zs, z_set, threshold));
  reports.push_back(check_phi_laplace(spec, z_set, threshold));
  const auto samples = random_elementary_samples(50);
  reports.push_back(check_elementary(samples, 1e-9));
  reports.push_back(check_prime_transform(spec, z_set, 1e-6));
  reports.push_back(check_gamma_transform(spec, z_set, 1e-6));
  if (zs) {
    auto ff = check_ff_star(spec, *zs, z_set, threshold);
    reports.push_back(ff.pointwise);
    reports.push_back(ff.laplace);
  }
  Output out(c.output);
  if (want_json(c)) {
    out.os() << to_json(reports) << '\n';
  } else {
    out.os() << "identity_id,max_residual,threshold,relative,pass\n";
    for (const auto& r : reports)
      out.os() << r.identity_id << ',' << format_double(r.max_residual) << ',' << format_double(r.threshold) << ','
               << (r.relative ? "yes" : "no") << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
  int failed = 0;
  for (const auto& r : reports)
    if (!r.pass) {
      ++failed;
      std::cerr << "screwctl verify: " << r.identity_id << " failed, max residual " << r.max_residual
                << " > " << r.threshold << '\n';
    }
  return failed ? kExitFailure : 0;
}

int cmd_scan(const Common& c, const std::string& evaluator, const std::string& grid_s, std::optional<double> tolerance) {
  const auto spec = load_spec(c.spec);
  const Grid g = parse_grid(grid_s);
  ScanOptions opts;
  opts.tolerance = tolerance;
  opts.phi_tol = c.tol;
  ScanReport rep;
  if (evaluator_from_string(evaluator) == Evaluator::zero_sum) {
    const auto zs = require_zeros(c, spec);
    // a set with off-line zeros need not come with a known B; zero is the neutral choice there
    const double B = spec.B.value_or(0.0);
    rep = scan_sign(zs, B, g.start, g.stop, g.step, opts);
  } else {
    rep = scan_sign(spec, g.start, g.stop, g.step, opts);
  }
  Output out(c.output);
  if (want_json(c)) out.os() << to_json(rep) << '\n';
  else write_csv(out.os(), rep);
  std::cerr << "screwctl scan: " << rep.t_grid.size() << " points, min " << rep.min_value << " at t = "
            << rep.min_location << ", " << rep.violations.size() << " violations\n";
  for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i)
    std::cerr << "  violation at t = " << rep.violations[i].t << ": " << rep.violations[i].value << '\n';
  std::cerr << "  " << rep.assumption << '\n';
  return rep.violations.empty() ? 0 : kExitFailure;
}

int cmd_moments(const Common& c, unsigned n_max, const std::vector<std::size_t>& cutoffs) {
  const auto spec = load_spec(c.spec);
  const auto zs = require_zeros(c, spec);
  std::vector<std::size_t> cuts = cutoffs;
  if (cuts.empty()) cuts = {std::max<std::size_t>(1, zs.zeros().size() / 10), zs.zeros().size()};
  const auto table = moments(zs, spec.central_B(), n_max, cuts);
  Output out(c.output);
  if (want_json(c)) out.os() << to_json(table) << '\n';
  else write_csv(out.os(), table);
  for (const auto& w : table.warnings) std::cerr << "screwctl moments: warning: " << w << '\n';
  return 0;
}

int cmd_sieve(const Common& c, std::uint64_t N) {
  const auto spec = load_spec(c.spec);
  const auto table = spec.coefficients.table(N);
  Output out(c.output);
  if (want_json(c)) {
    out.os() << "[\n";
    const auto es = table->entries();
    for (std::size_t i = 0; i < es.size() && es[i].n <= N; ++i)
      out.os() << (i ? ",\n" : "") << "  [" << es[i].n << ", " << format_double(es[i].value.real()) << ", "
               << format_double(es[i].value.imag()) << "]";
    out.os() << "\n]\n";
    return 0;
  }
  out.os() << "# n c_re c_im, spec " << spec.id << ", N = " << N << '\n';
  for (const auto& e : table->entries()) {
    if (e.n > N) break;
    out.os() << e.n << ' ' << format_double(e.value.real()) << ' ' << format_double(e.value.imag()) << '\n';
  }
  return 0;
}

int cmd_zeros_info(const Common& c) {
  const auto spec = load_spec(c.spec);
  const auto zs = require_zeros(c, spec);
  const auto& d = zs.density();
  double lo = 0.0, hi = 0.0;
  if (!zs.zeros().empty()) {
    lo = std::abs(zs.zeros().front().gamma);
    hi = std::abs(zs.zeros().back().gamma);
  }
  const auto m = screw_measure_constants(zs, spec.B.value_or(0.0));
  std::ostream& os = std::cout;
  if (want_json(c)) {
    os << "{\"source\": \"" << zs.source() << "\", \"stored\": " << zs.zeros().size()
       << ", \"total_count\": " << zs.total_count() << ", \"m0\": " << zs.m0()
       << ", \"mirrored\": " << (zs.mirrored() ? "true" : "false") << ", \"all_real\": "
       << (zs.all_real() ? "true" : "false") << ", \"min_abs\": " << format_double(lo)
       << ", \"max_abs\": " << format_double(hi) << ", \"max_imag\": " << format_double(zs.max_imag())
       << ", \"height_cutoff\": " << format_double(zs.height_cutoff()) << ", \"tail_active\": "
       << (d.active ? "true" : "false") << ", \"tail_log_q\": " << format_double(d.log_q)
       << ", \"tail_offset\": " << format_double(d.offset) << ", \"inverse_square_tail\": "
       << format_double(d.inverse_square_tail()) << ", \"tau_mass\": " << format_double(m.tau_mass) << "}\n";
    return 0;
  }
  os << "source          " << zs.source() << '\n'
     << "stored zeros    " << zs.zeros().size() << (zs.mirrored() ? " (each with its mirror -gamma)" : "") << '\n'
     << "total count     " << zs.total_count() << '\n'
     << "central m0      " << zs.m0() << '\n'
     << "all real        " << (zs.all_real() ? "yes" : "no") << '\n'
     << "|gamma| range   " << format_double(lo) << " .. " << format_double(hi) << '\n'
     << "max Im gamma    " << format_double(zs.max_imag()) << '\n'
     << "height cutoff   " << format_double(zs.height_cutoff()) << '\n';
  if (d.active)
    os << "tail model      N(u) ~ (" << d.degree << " u/pi)(log u + " << format_double(d.log_q) << " - 1) + "
       << format_double(d.offset) << " (fitted, heuristic)\n"
       << "sum 1/gamma^2 above cutoff ~ " << format_double(d.inverse_square_tail()) << '\n';
  else
    os << "tail model      none\n";
  os << "tau mass        " << format_double(m.tau_mass) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"screwctl: screw functions of L-functions from zeros and from primes"};
  app.require_subcommand(1);

  Common c;
  bool catalog_json = false;
  auto* catalog = app.add_subcommand("catalog", "list built-in L-function specs");
  catalog->add_flag("--json", catalog_json, "dump specs as JSON");

  std::string which = "both", grid = "0:10:1";
  auto* eval = app.add_subcommand("eval", "evaluate g (zero sum), phi (zero-free) or both on a t grid");
  add_common(eval, c, true);
  eval->add_option("--which", which, "g, phi or both");
  eval->add_option("--t", grid, "grid start:stop:step");

  std::string z_list;
  double threshold = 1e-5;
  auto* verify = app.add_subcommand("verify", "check the Laplace-transform identities");
  add_common(verify, c, true, false);
  verify->add_option("--z", z_list, "comma-separated z samples, e.g. 2i,3i,1+2i");
  verify->add_option("--threshold", threshold, "relative threshold for the Laplace identities");

  std::string evaluator = "zero_sum", scan_grid = "0:50:0.01";
  std::optional<double> tolerance;
  auto* scan = app.add_subcommand("scan", "sign scan of Re(-g) on a t grid");
  add_common(scan, c, true);
  scan->add_option("--evaluator", evaluator, "zero_sum or zero_free");
  scan->add_option("--t", scan_grid, "grid start:stop:step");
  scan->add_option("--tolerance", tolerance, "fixed violation tolerance (default: per-point error estimate)");

  unsigned n_max = 3;
  std::vector<std::size_t> cutoffs;
  auto* mom = app.add_subcommand("moments", "moments int e^{-t/2} (-g) t^n dt at several zero cutoffs");
  add_common(mom, c, true, false);
  mom->add_option("--n-max", n_max, "largest n (<= 20)");
  mom->add_option("--cutoffs", cutoffs, "zero counts, e.g. 1000 10000")->delimiter(',');

  std::uint64_t sieve_n = 100;
  auto* sieve = app.add_subcommand("sieve", "dump the coefficients c(n), n <= N");
  add_common(sieve, c, false, false);
  sieve->add_option("-N,--N", sieve_n, "largest n");

  auto* info = app.add_subcommand("zeros-info", "summarise a zero file");
  add_common(info, c, true, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*catalog) return cmd_catalog(catalog_json);
    if (*eval) return cmd_eval(c, which, grid);
    if (*verify) return cmd_verify(c, z_list, threshold);
    if (*scan) return cmd_scan(c, evaluator, scan_grid, tolerance);
    if (*mom) return cmd_moments(c, n_max, cutoffs);
    if (*sieve) return cmd_sieve(c, sieve_n);
    if (*info) return cmd_zeros_info(c);
  } catch (const std::exception& e) {
    std::cerr << "screwctl: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
