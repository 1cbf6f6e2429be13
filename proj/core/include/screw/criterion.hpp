#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "screw/lfunction.hpp"
#include "screw/zeros.hpp"

namespace screw {

enum class Evaluator { zero_free, zero_sum };

const char* to_string(Evaluator e);
Evaluator evaluator_from_string(const std::string& s);

struct Violation {
  double t = 0.0;
  double value = 0.0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Sampled values of Re(-g_F(t)) on a grid.
struct ScanReport {
  Evaluator evaluator = Evaluator::zero_sum;
  std::vector<double> t_grid;
  std::vector<double> values;
  std::vector<double> tolerances;  ///< per-point tolerance actually applied
  double min_value = 0.0;
  double min_location = 0.0;
  /// golden-section refinement of the grid minimum within one step
  double refined_min_value = 0.0;
  double refined_min_location = 0.0;
  std::vector<Violation> violations;  ///< points with value < -tolerance
  std::optional<double> tolerance;    ///< fixed tolerance, or empty when adaptive
  std::string assumption;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

struct ScanOptions {
  /// Fixed tolerance; by default each point uses the evaluator's own error estimate.
  std::optional<double> tolerance;
  bool refine = true;
  double phi_tol = 1e-10;
  std::uint64_t budget = default_coefficient_budget();
};

/// start, start + step, ... up to stop; stop itself closes the grid when the
/// steps miss it.  start == stop gives one point.
std::vector<double> make_grid(double start, double stop, double step);

/// Zero-sum scan.  Real zero sets use re_neg_g; sets with complex zeros are
/// evaluated as Re(-g_from_zeros), which is how off-line zeros show up.
ScanReport scan_sign(const ZeroMultiset& zeros, double B, double t_min, double t_max, double step,
                     const ScanOptions& opts = {});

/// Zero-free scan through Phi_F, which equals -g_F.  Throws budget_error when
/// t_max is beyond the coefficient budget.
ScanReport scan_sign(const LFunctionSpec& spec, double t_min, double t_max, double step, const ScanOptions& opts = {});

struct MomentEntry {
  unsigned n = 0;
  double mu = 0.0;      ///< with the modelled contribution of the omitted zeros
  double mu_raw = 0.0;  ///< stored zeros only
  double cutoff_T = 0.0;
  std::size_t zero_count = 0;
  /// |mu - mu at the previous cutoff| / |mu|; NaN at the first cutoff
  double stability = 0.0;
  double quad_error = 0.0;

  bool operator==(const MomentEntry& o) const;
};

struct MomentTable {
  std::vector<MomentEntry> entries;  ///< ordered by n, then cutoff
  std::vector<std::string> warnings;

  friend bool operator==(const MomentTable&, const MomentTable&) = default;
};

/// mu_n = int_0^inf e^{-t/2} Re(-g(t)) t^n dt for n <= n_max, for the first
/// `cutoffs[k]` zeros of a real zero set.  Needs n_max <= 20 and two cutoffs.
/// Warns when the relative change at the largest cutoff exceeds 1e-2.
MomentTable moments(const ZeroMultiset& zeros, double B, unsigned n_max, std::span<const std::size_t> cutoffs,
                    double tol = 1e-10);

/// G = F F*: coefficients 2 Re c(n), factors of F followed by their conjugates,
/// Q^2, pole order 2 m_F, omega = 1, B = 0, m0 doubled.
LFunctionSpec symmetrize_ff_star(const LFunctionSpec& spec);

}  // namespace screw
