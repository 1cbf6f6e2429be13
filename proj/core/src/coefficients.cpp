#include "screw/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>

#include "screw/errors.hpp"

namespace screw {
namespace {

constexpr double kBoundarySlack = 1e-12;

double slack(double t) { return kBoundarySlack * std::max(1.0, std::abs(t)); }

std::vector<bool> composite_sieve(std::uint64_t N) {
  std::vector<bool> composite(N + 1, false);
  for (std::uint64_t p = 2; p * p <= N; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= N; m += p) composite[m] = true;
  }
  return composite;
}

void check_budget(std::uint64_t N, std::uint64_t budget, const char* who) {
  if (N < 2) throw precondition_error(std::string(who) + ": requires N >= 2");
  if (N > budget)
    throw budget_error(std::string(who) + ": N = " + std::to_string(N) + " exceeds coefficient budget " +
                           std::to_string(budget),
                       static_cast<double>(budget));
}

// Calls emit(p^k, k, p) for every prime power p^k <= N.
template <class Emit>
void for_each_prime_power(std::uint64_t N, Emit&& emit) {
  const auto composite = composite_sieve(N);
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (composite[p]) continue;
    std::uint64_t pk = p;
    for (int k = 1;; ++k) {
      emit(pk, k, p);
      if (pk > N / p) break;
      pk *= p;
    }
  }
}

bool squarefree(std::uint64_t m) {
  if (m == 0) return false;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  // n odd, positive
  a %= n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

cplx apply(CoefficientTransform tr, cplx c) {
  switch (tr) {
    case CoefficientTransform::identity:
      return c;
    case CoefficientTransform::conjugate:
      return std::conj(c);
    case CoefficientTransform::twice_real:
      return 2.0 * c.real();
  }
  return c;
}

}  // namespace

std::uint64_t default_coefficient_budget() {
  if (const char* env = std::getenv("SCREW_COEFF_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 2.0 && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  return 100'000'000ULL;
}

// ---------------------------------------------------------------------------
// CoefficientTable

CoefficientTable::CoefficientTable(std::uint64_t cutoff, std::vector<std::pair<std::uint64_t, cplx>> entries)
    : cutoff_(cutoff) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [n, c] = entries[i];
    if (n < 2 || n > cutoff)
      throw precondition_error("CoefficientTable: index " + std::to_string(n) + " outside [2, cutoff]");
    if (i > 0 && entries[i - 1].first == n)
      throw precondition_error("CoefficientTable: repeated index " + std::to_string(n));
    if (c == cplx{}) continue;
    entries_.push_back({n, c, std::log(static_cast<double>(n))});
  }

  prefix_weight_.resize(entries_.size() + 1);
  prefix_weight_log_.resize(entries_.size() + 1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    const long double inv_sqrt = 1.0L / std::sqrt(static_cast<long double>(e.n));
    const cplx_ld w = cplx_ld(e.value.real(), e.value.imag()) * inv_sqrt;
    prefix_weight_[i + 1] = prefix_weight_[i] + w;
    prefix_weight_log_[i + 1] = prefix_weight_log_[i] + w * std::log(static_cast<long double>(e.n));
    growth_ = std::max(growth_, std::abs(e.value) / e.log_n);
  }
}

cplx CoefficientTable::value(std::uint64_t n) const {
  if (n < 2 || n > cutoff_)
    throw precondition_error("CoefficientTable::value: index " + std::to_string(n) + " outside [2, cutoff]");
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const CoefficientEntry& e, std::uint64_t m) { return e.n < m; });
  return it != entries_.end() && it->n == n ? it->value : cplx{};
}

std::size_t CoefficientTable::count_through(double t) const {
  const double bound = t + slack(t);
  return static_cast<std::size_t>(
      std::upper_bound(entries_.begin(), entries_.end(), bound,
                       [](double b, const CoefficientEntry& e) { return b < e.log_n; }) -
      entries_.begin());
}

cplx CoefficientTable::weighted_prime_sum(double t) const {
  // every n <= e^t is known once floor(e^t) <= cutoff
  if (t > 0.0 && (cutoff_ < 2 || t >= std::log(static_cast<double>(cutoff_) + 1.0) + slack(t)))
    throw budget_error("weighted_prime_sum: e^t exceeds the table cutoff",
                       cutoff_ >= 2 ? std::log(static_cast<double>(cutoff_)) : 0.0);
  if (t <= 0.0) return 0.0;
  // Entries with log n within the slack of t have weight (t - log n) = 0.
  const double bound = t - slack(t);
  const auto k = static_cast<std::size_t>(
      std::upper_bound(entries_.begin(), entries_.end(), bound,
                       [](double b, const CoefficientEntry& e) { return b < e.log_n; }) -
      entries_.begin());
  const cplx_ld r = static_cast<long double>(t) * prefix_weight_[k] - prefix_weight_log_[k];
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// ---------------------------------------------------------------------------
// Sieves

CoefficientTable sieve_von_mangoldt(std::uint64_t N, std::uint64_t budget) {
  check_budget(N, budget, "sieve_von_mangoldt");
  std::vector<std::pair<std::uint64_t, cplx>> out;
  for_each_prime_power(N, [&](std::uint64_t pk, int, std::uint64_t p) {
    out.emplace_back(pk, std::log(static_cast<double>(p)));
  });
  return {N, std::move(out)};
}

int kronecker_symbol(std::int64_t d, std::uint64_t n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n % 2 == 0) {
    if (d % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++v;
    }
    const std::int64_t r = ((d % 8) + 8) % 8;
    if (v % 2 == 1 && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  const auto un = static_cast<std::int64_t>(n);
  const std::uint64_t a = n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())
                              ? (d >= 0 ? static_cast<std::uint64_t>(d) : n - static_cast<std::uint64_t>(-d))
                              : static_cast<std::uint64_t>(((d % un) + un) % un);
  return result * jacobi(a, n);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  const auto mag = [](std::int64_t x) { return static_cast<std::uint64_t>(x < 0 ? -x : x); };
  if (r == 1) return squarefree(mag(d));
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(mag(m));
}

CoefficientTable quadratic_character_coeffs(std::int64_t d, std::uint64_t N, std::uint64_t budget) {
  if (!is_fundamental_discriminant(d))
    throw precondition_error("quadratic_character_coeffs: " + std::to_string(d) + " is not a fundamental discriminant");
  check_budget(N, budget, "quadratic_character_coeffs");
  std::vector<std::pair<std::uint64_t, cplx>> out;
  int chi_p = 0;
  for_each_prime_power(N, [&](std::uint64_t pk, int k, std::uint64_t p) {
    if (k == 1) chi_p = kronecker_symbol(d, p);
    if (chi_p == 0) return;
    const int chi = (k % 2 == 0) ? 1 : chi_p;
    out.emplace_back(pk, chi * std::log(static_cast<double>(p)));
  });
  return {N, std::move(out)};
}

// ---------------------------------------------------------------------------
// Files

CoefficientTable read_coefficient_file(std::istream& in) {
  std::vector<std::pair<std::uint64_t, cplx>> out;
  std::uint64_t cutoff = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok_n;
    if (!(fields >> tok_n)) continue;
    double re = 0.0, im = 0.0;
    std::string extra;
    std::size_t used = 0;
    std::uint64_t n = 0;
    try {
      n = std::stoull(tok_n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok_n.size() || tok_n.front() == '-') throw parse_error("coefficient file: bad index '" + tok_n + "'", lineno);
    if (!(fields >> re >> im) || (fields >> extra))
      throw parse_error("coefficient file: expected 'n c_re c_im'", lineno);
    if (n < 2) throw parse_error("coefficient file: index must be >= 2", lineno);
    if (!std::isfinite(re) || !std::isfinite(im)) throw parse_error("coefficient file: non-finite value", lineno);
    out.emplace_back(n, cplx{re, im});
    cutoff = std::max(cutoff, n);
  }
  if (out.empty()) throw parse_error("coefficient file: no records");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].first == out[i - 1].first)
      throw parse_error("coefficient file: repeated index " + std::to_string(out[i].first));
  return {cutoff, std::move(out)};
}

CoefficientTable read_coefficient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open coefficient file " + path.string());
  return read_coefficient_file(in);
}

void write_coefficient_file(std::ostream& out, const CoefficientTable& table) {
  const auto old = out.precision(17);
  for (const auto& e : table.entries()) out << e.n << ' ' << e.value.real() << ' ' << e.value.imag() << '\n';
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Provider

struct CoefficientProvider::Cache {
  std::mutex mutex;
  std::shared_ptr<const CoefficientTable> table;
};

CoefficientProvider::CoefficientProvider() : cache_(std::make_shared<Cache>()) {}

CoefficientProvider CoefficientProvider::none() { return {}; }

CoefficientProvider CoefficientProvider::zeta() {
  CoefficientProvider p;
  p.source_ = CoefficientSource::zeta;
  return p;
}

CoefficientProvider CoefficientProvider::kronecker(std::int64_t d) {
  if (!is_fundamental_discriminant(d))
    throw precondition_error("kronecker provider: " + std::to_string(d) + " is not a fundamental discriminant");
  CoefficientProvider p;
  p.source_ = CoefficientSource::kronecker;
  p.discriminant_ = d;
  return p;
}

CoefficientProvider CoefficientProvider::file(std::filesystem::path path) {
  CoefficientProvider p;
  p.source_ = CoefficientSource::file;
  p.path_ = std::move(path);
  return p;
}

CoefficientProvider CoefficientProvider::values(std::vector<std::pair<std::uint64_t, cplx>> values) {
  CoefficientProvider p;
  p.source_ = CoefficientSource::values;
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  p.values_ = std::move(values);
  return p;
}

bool CoefficientProvider::real_valued() const noexcept {
  return source_ == CoefficientSource::none || source_ == CoefficientSource::zeta ||
         source_ == CoefficientSource::kronecker || transform_ == CoefficientTransform::twice_real;
}

CoefficientProvider CoefficientProvider::conjugated() const {
  if (real_valued()) return *this;
  CoefficientProvider p = *this;
  p.cache_ = std::make_shared<Cache>();
  p.transform_ = transform_ == CoefficientTransform::identity ? CoefficientTransform::conjugate
                                                              : CoefficientTransform::identity;
  return p;
}

CoefficientProvider CoefficientProvider::twice_real() const {
  CoefficientProvider p = *this;
  p.cache_ = std::make_shared<Cache>();
  p.transform_ = CoefficientTransform::twice_real;
  return p;
}

std::uint64_t CoefficientProvider::max_cutoff(std::uint64_t budget) const {
  switch (source_) {
    case CoefficientSource::none:
      return std::numeric_limits<std::uint64_t>::max();
    case CoefficientSource::zeta:
    case CoefficientSource::kronecker:
      return budget;
    case CoefficientSource::file:
    case CoefficientSource::values:
      return table(2, budget)->cutoff();
  }
  return 0;
}

std::shared_ptr<const CoefficientTable> CoefficientProvider::build(std::uint64_t N, std::uint64_t budget) const {
  CoefficientTable raw;
  switch (source_) {
    case CoefficientSource::none:
      return std::make_shared<CoefficientTable>(N, std::vector<std::pair<std::uint64_t, cplx>>{});
    case CoefficientSource::zeta:
      raw = sieve_von_mangoldt(N, budget);
      break;
    case CoefficientSource::kronecker:
      raw = quadratic_character_coeffs(discriminant_, N, budget);
      break;
    case CoefficientSource::file:
      raw = read_coefficient_file(path_);
      break;
    case CoefficientSource::values: {
      std::uint64_t cutoff = 2;
      for (const auto& v : values_) cutoff = std::max(cutoff, v.first);
      raw = CoefficientTable(cutoff, values_);
      break;
    }
  }
  if (transform_ == CoefficientTransform::identity) return std::make_shared<CoefficientTable>(std::move(raw));
  std::vector<std::pair<std::uint64_t, cplx>> mapped;
  mapped.reserve(raw.entries().size());
  for (const auto& e : raw.entries()) mapped.emplace_back(e.n, apply(transform_, e.value));
  return std::make_shared<CoefficientTable>(raw.cutoff(), std::move(mapped));
}

std::shared_ptr<const CoefficientTable> CoefficientProvider::table(std::uint64_t N, std::uint64_t budget) const {
  N = std::max<std::uint64_t>(N, 2);
  if (source_ == CoefficientSource::none) return build(N, budget);

  std::lock_guard lock(cache_->mutex);
  if (cache_->table && cache_->table->cutoff() >= N) return cache_->table;

  const bool finite_source = source_ == CoefficientSource::file || source_ == CoefficientSource::values;
  if (finite_source) {
    if (!cache_->table) cache_->table = build(N, budget);
    if (cache_->table->cutoff() < N)
      throw budget_error("coefficient source provides only n <= " + std::to_string(cache_->table->cutoff()),
                         static_cast<double>(cache_->table->cutoff()));
    return cache_->table;
  }

  if (N > budget)
    throw budget_error("requested " + std::to_string(N) + " coefficients; budget is " + std::to_string(budget),
                       static_cast<double>(budget));
  // Grow geometrically so repeated requests with slowly increasing N stay cheap.
  std::uint64_t target = N;
  if (cache_->table) target = std::max(target, std::min(budget, 2 * cache_->table->cutoff()));
  cache_->table = build(target, budget);
  return cache_->table;
}

bool operator==(const CoefficientProvider& a, const CoefficientProvider& b) {
  return a.source_ == b.source_ && a.transform_ == b.transform_ && a.discriminant_ == b.discriminant_ &&
         a.path_ == b.path_ && a.values_ == b.values_;
}

}  // namespace screw
