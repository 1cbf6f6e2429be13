#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "screw/numeric.hpp"

namespace screw {

/// Largest coefficient index any provider will sieve.  Reads the
/// SCREW_COEFF_BUDGET environment variable, defaulting to 1e8.
std::uint64_t default_coefficient_budget();

struct CoefficientEntry {
  std::uint64_t n = 0;
  cplx value{};
  double log_n = 0.0;
};

/// Nonzero Euler-sum coefficients c(n), 2 <= n <= cutoff, stored sparsely in
/// ascending n.  Immutable once built; safe to share between threads.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  /// `entries` need not be sorted; zero values are dropped.  Throws
  /// precondition_error on n < 2, n > cutoff or a repeated n.
  CoefficientTable(std::uint64_t cutoff, std::vector<std::pair<std::uint64_t, cplx>> entries);

  std::uint64_t cutoff() const noexcept { return cutoff_; }
  std::span<const CoefficientEntry> entries() const noexcept { return entries_; }

  /// c(n); zero when n is absent.  Requires 2 <= n <= cutoff.
  cplx value(std::uint64_t n) const;

  /// sum_{n <= e^t} c(n) / sqrt(n) * (t - log n), via prefix sums.
  /// Terms with |t - log n| <= 1e-12 max(1, t) carry zero weight.
  /// Requires e^t < cutoff + 1, i.e. every n <= e^t is covered.
  cplx weighted_prime_sum(double t) const;

  /// Entries with log n <= t (inclusive, same slack as above).
  std::size_t count_through(double t) const;

  /// max |c(n)| / log n over the table (0 for an empty table).
  double growth_constant() const noexcept { return growth_; }

 private:
  std::uint64_t cutoff_ = 0;
  std::vector<CoefficientEntry> entries_;
  // prefix sums over entries [0, k): c/sqrt(n) and c log(n)/sqrt(n)
  std::vector<cplx_ld> prefix_weight_;
  std::vector<cplx_ld> prefix_weight_log_;
  double growth_ = 0.0;
};

/// von Mangoldt coefficients: c(p^k) = log p, zero elsewhere.
/// Throws budget_error when N exceeds `budget`.
CoefficientTable sieve_von_mangoldt(std::uint64_t N, std::uint64_t budget = default_coefficient_budget());

/// Kronecker symbol (d / n) for n >= 1.
int kronecker_symbol(std::int64_t d, std::uint64_t n);

bool is_fundamental_discriminant(std::int64_t d);

/// c(p^k) = chi_d(p)^k log p for the real primitive character chi_d = (d / .).
/// Throws precondition_error for a non-fundamental d.
CoefficientTable quadratic_character_coeffs(std::int64_t d, std::uint64_t N,
                                            std::uint64_t budget = default_coefficient_budget());

/// Parses newline-delimited "n c_re c_im" records ('#' starts a comment).
/// The cutoff is the largest n read.
CoefficientTable read_coefficient_file(std::istream& in);
CoefficientTable read_coefficient_file(const std::filesystem::path& path);
void write_coefficient_file(std::ostream& out, const CoefficientTable& table);

enum class CoefficientSource { none, zeta, kronecker, file, values };
enum class CoefficientTransform { identity, conjugate, twice_real };

/// Pluggable source of c(n) with a lazily grown, shared table cache.
/// Copies share the cache; derived providers (conjugated(), twice_real())
/// get their own.
class CoefficientProvider {
 public:
  CoefficientProvider();  // none

  static CoefficientProvider none();
  static CoefficientProvider zeta();
  static CoefficientProvider kronecker(std::int64_t d);
  static CoefficientProvider file(std::filesystem::path path);
  static CoefficientProvider values(std::vector<std::pair<std::uint64_t, cplx>> values);

  /// Provider for the conjugate coefficients.  Real sources map to themselves.
  CoefficientProvider conjugated() const;
  /// Provider for 2 Re c(n).
  CoefficientProvider twice_real() const;

  CoefficientSource source() const noexcept { return source_; }
  CoefficientTransform transform() const noexcept { return transform_; }
  std::int64_t discriminant() const noexcept { return discriminant_; }
  const std::filesystem::path& path() const noexcept { return path_; }
  const std::vector<std::pair<std::uint64_t, cplx>>& explicit_values() const noexcept { return values_; }

  /// Whether the source's coefficients are real, so conjugation is trivial.
  bool real_valued() const noexcept;

  /// Largest cutoff this provider can serve: the budget for sieves, the file
  /// or list extent for finite sources, unbounded for `none`.
  std::uint64_t max_cutoff(std::uint64_t budget = default_coefficient_budget()) const;

  /// A table covering at least [2, N].  Throws budget_error when N exceeds max_cutoff().
  std::shared_ptr<const CoefficientTable> table(std::uint64_t N,
                                                std::uint64_t budget = default_coefficient_budget()) const;

  friend bool operator==(const CoefficientProvider& a, const CoefficientProvider& b);

 private:
  struct Cache;

  std::shared_ptr<const CoefficientTable> build(std::uint64_t N, std::uint64_t budget) const;

  CoefficientSource source_ = CoefficientSource::none;
  CoefficientTransform transform_ = CoefficientTransform::identity;
  std::int64_t discriminant_ = 0;
  std::filesystem::path path_;
  std::vector<std::pair<std::uint64_t, cplx>> values_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace screw
