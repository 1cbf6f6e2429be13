#include "screw/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "screw/errors.hpp"
#include "screw/special_functions.hpp"

namespace screw {

void GammaFactorData::validate() const {
  if (!(Q > 0.0) || !std::isfinite(Q)) throw precondition_error("gamma data: Q must be positive");
  for (const auto& f : factors) {
    if (!(f.lambda > 0.0) || !std::isfinite(f.lambda)) throw precondition_error("gamma data: lambda must be positive");
    if (!(f.mu.real() >= 0.0) || !std::isfinite(f.mu.imag()))
      throw precondition_error("gamma data: Re(mu) must be nonnegative");
  }
  if (!(std::abs(std::abs(omega) - 1.0) <= 1e-12)) throw precondition_error("gamma data: |omega| must equal 1");
}

double GammaFactorData::degree() const noexcept {
  double d = 0.0;
  for (const auto& f : factors) d += 2.0 * f.lambda;
  return d;
}

void LFunctionSpec::validate() const {
  gamma.validate();
  if (B && !std::isfinite(*B)) throw precondition_error("spec " + id + ": B must be finite");
  if (self_dual && std::abs(gamma.omega - 1.0) <= 1e-12 && B && *B != 0.0)
    throw precondition_error("spec " + id + ": self-dual with omega = 1 forces B = 0");
}

double LFunctionSpec::central_B() const {
  if (!B) throw precondition_error("spec " + id + ": B_F is unknown; supply it in the spec");
  return *B;
}

LFunctionSpec make_spec(LFunctionSpec spec) {
  spec.validate();
  if (!spec.B && spec.self_dual && std::abs(spec.gamma.omega - 1.0) <= 1e-12) spec.B = 0.0;
  return spec;
}

namespace {

double tail_bound(double C, double N, double sigma) {
  const double d = sigma - 1.0;
  return C * std::pow(N, -d) * (std::log(N) / d + 1.0 / (d * d));
}

}  // namespace

Estimate f_log_derivative(const LFunctionSpec& spec, cplx s, double tol, const EvalOptions& opts) {
  const double sigma = s.real();
  if (!(sigma > 1.0 + opts.margin))
    throw domain_error("f_log_derivative: requires Re(s) > " + std::to_string(1.0 + opts.margin));
  if (!(tol > 0.0)) throw precondition_error("f_log_derivative: tol must be positive");

  const auto& provider = spec.coefficients;
  if (provider.source() == CoefficientSource::none) return {0.0, 0.0, false};

  const std::uint64_t limit = provider.max_cutoff(opts.budget);
  const bool sieved = provider.source() == CoefficientSource::zeta || provider.source() == CoefficientSource::kronecker;
  const double C = sieved ? (provider.transform() == CoefficientTransform::twice_real ? 2.0 : 1.0)
                          : provider.table(std::min<std::uint64_t>(limit, 1u << 16), opts.budget)->growth_constant();

  // Smallest N (to within 1/64) whose tail bound meets tol.
  std::uint64_t hi = std::min<std::uint64_t>(64, limit);
  while (tail_bound(C, static_cast<double>(hi), sigma) > tol) {
    if (hi >= limit) {
      std::ostringstream msg;
      msg << "f_log_derivative: tail bound " << tail_bound(C, static_cast<double>(limit), sigma) << " at N = " << limit
          << " exceeds tol = " << tol << "; raise the coefficient budget or move s to the right";
      throw convergence_error(msg.str());
    }
    hi = std::min(limit, hi * 2);
  }
  std::uint64_t lo = std::max<std::uint64_t>(2, hi / 2);
  while (hi - lo > std::max<std::uint64_t>(1, hi / 64)) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (tail_bound(C, static_cast<double>(mid), sigma) > tol)
      lo = mid;
    else
      hi = mid;
  }
  const std::uint64_t N = std::min(hi, limit);
  const auto table = provider.table(N, opts.budget);

  const auto entries = table->entries();
  const auto end = std::upper_bound(entries.begin(), entries.end(), N,
                                    [](std::uint64_t n, const CoefficientEntry& e) { return n < e.n; });
  compensated_sum<cplx> acc;
  for (auto it = end; it != entries.begin();) {
    --it;
    acc += it->value * std::exp(-s * it->log_n);
  }
  const double used = static_cast<double>(N);
  const double tail = tail_bound(C, used, sigma);
  return {-acc.value(), tail + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(acc.value()), !sieved};
}

Estimate xi_log_derivative(const LFunctionSpec& spec, cplx s, double tol, const EvalOptions& opts) {
  const auto& g = spec.gamma;
  if (g.m_F > 0 && (s == cplx{0.0} || s == cplx{1.0}))
    throw pole_error("xi_log_derivative: pole at s = 0 or s = 1");
  const auto share = tol / static_cast<double>(2 + g.factors.size());
  const Estimate fl = f_log_derivative(spec, s, share, opts);

  compensated_sum<cplx> acc;
  const double m = g.m_F;
  acc += m / (s - 1.0);
  acc += m / s;
  acc += fl.value;
  acc += std::log(g.Q);
  for (const auto& f : g.factors) acc += f.lambda * digamma(f.lambda * s + f.mu, share / f.lambda);
  return {acc.value(), fl.error + share * static_cast<double>(1 + g.factors.size()), fl.heuristic};
}

LFunctionSpec dual(const LFunctionSpec& spec) {
  if (spec.self_dual) return spec;
  LFunctionSpec d = spec;
  d.coefficients = spec.coefficients.conjugated();
  for (auto& f : d.gamma.factors) f.mu = std::conj(f.mu);
  d.gamma.omega = std::conj(spec.gamma.omega);
  if (spec.B) d.B = -*spec.B;
  if (!d.id.empty() && d.id.back() == '*')
    d.id.pop_back();
  else
    d.id += '*';
  return d;
}

// ---------------------------------------------------------------------------
// Catalog

LFunctionSpec zeta_spec() {
  LFunctionSpec s;
  s.id = "zeta";
  s.gamma.Q = 1.0 / std::sqrt(pi);
  s.gamma.factors = {{0.5, 0.0}};
  s.gamma.m_F = 1;
  s.coefficients = CoefficientProvider::zeta();
  s.B = 0.0;
  s.self_dual = true;
  return make_spec(std::move(s));
}

LFunctionSpec zeta_duplicated_spec() {
  LFunctionSpec s = zeta_spec();
  s.id = "zeta-dup";
  s.gamma.Q = std::sqrt(2.0 / pi);
  s.gamma.factors = {{0.25, 0.0}, {0.25, 0.5}};
  return make_spec(std::move(s));
}

LFunctionSpec quadratic_dirichlet_spec(std::int64_t d) {
  LFunctionSpec s;
  s.id = "dirichlet:" + std::to_string(d);
  s.coefficients = CoefficientProvider::kronecker(d);
  s.gamma.Q = std::sqrt(std::abs(static_cast<double>(d)) / pi);
  s.gamma.factors = {{0.5, d < 0 ? 0.5 : 0.0}};
  s.gamma.m_F = 0;
  s.B = 0.0;
  s.self_dual = true;
  return make_spec(std::move(s));
}

std::vector<LFunctionSpec> builtin_catalog() {
  std::vector<LFunctionSpec> out{zeta_spec(), zeta_duplicated_spec()};
  for (const std::int64_t d : {-3, -4, -7, -8, 5, 8, 12, 13}) out.push_back(quadratic_dirichlet_spec(d));
  return out;
}

std::optional<LFunctionSpec> find_builtin(const std::string& id) {
  if (id == "zeta") return zeta_spec();
  if (id == "zeta-dup") return zeta_duplicated_spec();
  const std::string prefix = "dirichlet:";
  if (id.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const auto d = std::stoll(id.substr(prefix.size()), &used);
      if (used == id.size() - prefix.size() && is_fundamental_discriminant(d)) return quadratic_dirichlet_spec(d);
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

std::string spec_to_json(const LFunctionSpec& spec, int indent) {
  json j;
  j["id"] = spec.id;
  j["mF"] = spec.gamma.m_F;
  j["Q"] = spec.gamma.Q;
  j["factors"] = json::array();
  for (const auto& f : spec.gamma.factors)
    j["factors"].push_back({{"lambda", f.lambda}, {"mu_re", f.mu.real()}, {"mu_im", f.mu.imag()}});
  j["omega_re"] = spec.gamma.omega.real();
  j["omega_im"] = spec.gamma.omega.imag();
  j["B"] = spec.B ? json(*spec.B) : json(nullptr);
  j["m0"] = spec.m0;
  j["self_dual"] = spec.self_dual;

  const auto& p = spec.coefficients;
  switch (p.source()) {
    case CoefficientSource::none:
      j["coeffs"] = "none";
      break;
    case CoefficientSource::zeta:
      j["coeffs"] = "zeta";
      break;
    case CoefficientSource::kronecker:
      j["coeffs"] = {{"kronecker", p.discriminant()}};
      break;
    case CoefficientSource::file:
      j["coeffs"] = {{"file", p.path().string()}};
      break;
    case CoefficientSource::values: {
      json arr = json::array();
      for (const auto& [n, c] : p.explicit_values()) arr.push_back({n, c.real(), c.imag()});
      j["coeffs"] = {{"values", arr}};
      break;
    }
  }
  switch (p.transform()) {
    case CoefficientTransform::identity:
      break;
    case CoefficientTransform::conjugate:
      j["coeff_transform"] = "conjugate";
      break;
    case CoefficientTransform::twice_real:
      j["coeff_transform"] = "twice_real";
      break;
  }
  return j.dump(indent);
}

namespace {

template <class T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

CoefficientProvider provider_from_json(const json& c, const std::filesystem::path& base_dir) {
  if (c.is_string()) {
    const auto name = c.get<std::string>();
    if (name == "zeta") return CoefficientProvider::zeta();
    if (name == "none") return CoefficientProvider::none();
    throw parse_error("spec: unknown coefficient source '" + name + "'");
  }
  if (!c.is_object()) throw parse_error("spec: coeffs must be a string or object");
  if (c.contains("kronecker")) return CoefficientProvider::kronecker(c.at("kronecker").get<std::int64_t>());
  if (c.contains("file")) {
    std::filesystem::path path = c.at("file").get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return CoefficientProvider::file(path);
  }
  if (c.contains("values")) {
    std::vector<std::pair<std::uint64_t, cplx>> vals;
    for (const auto& row : c.at("values")) {
      if (!row.is_array() || row.size() != 3) throw parse_error("spec: values rows are [n, re, im]");
      vals.emplace_back(row[0].get<std::uint64_t>(), cplx{row[1].get<double>(), row[2].get<double>()});
    }
    return CoefficientProvider::values(std::move(vals));
  }
  throw parse_error("spec: coeffs object needs 'kronecker', 'file' or 'values'");
}

}  // namespace

LFunctionSpec spec_from_json(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("spec: ") + e.what());
  }
  try {
    LFunctionSpec s;
    s.id = field<std::string>(j, "id", "custom");
    s.gamma.m_F = field<unsigned>(j, "mF", 0u);
    s.gamma.Q = field<double>(j, "Q", 1.0);
    if (j.contains("factors"))
      for (const auto& f : j.at("factors"))
        s.gamma.factors.push_back({f.at("lambda").get<double>(), {field<double>(f, "mu_re", 0.0), field<double>(f, "mu_im", 0.0)}});
    s.gamma.omega = {field<double>(j, "omega_re", 1.0), field<double>(j, "omega_im", 0.0)};
    if (j.contains("B") && !j.at("B").is_null()) s.B = j.at("B").get<double>();
    s.m0 = field<unsigned>(j, "m0", 0u);
    s.self_dual = field<bool>(j, "self_dual", false);
    s.coefficients = j.contains("coeffs") ? provider_from_json(j.at("coeffs"), base_dir) : CoefficientProvider::none();
    const auto transform = field<std::string>(j, "coeff_transform", "identity");
    if (transform == "conjugate")
      s.coefficients = s.coefficients.conjugated();
    else if (transform == "twice_real")
      s.coefficients = s.coefficients.twice_real();
    else if (transform != "identity")
      throw parse_error("spec: unknown coeff_transform '" + transform + "'");
    return make_spec(std::move(s));
  } catch (const json::exception& e) {
    throw parse_error(std::string("spec: ") + e.what());
  }
}

LFunctionSpec load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return spec_from_json(buf.str(), path.parent_path());
}

}  // namespace screw
