#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "screw/numeric.hpp"

namespace screw {

/// A nontrivial zero gamma of F(1/2 - iz) with its multiplicity.
struct Zero {
  cplx gamma;
  unsigned mult = 1;

  friend bool operator==(const Zero&, const Zero&) = default;
};

enum class ZeroFormat { plain_imag, csv_complex };

/// How the zeros above the height cutoff are accounted for.
enum class TailModel {
  none,                  ///< the set is complete; no tail
  riemann_von_mangoldt,  ///< smooth density fitted to the stored zeros (heuristic)
};

/// Smooth zero-counting model for all zeros with |gamma| <= u:
///   N(u) ~ (d u / pi) (log(q u) - 1) + offset,
/// so the density of |gamma| is (d / pi) log(q u).  For zeta (d = 1) this is
/// twice the Riemann-von Mangoldt count of zeros in (0, u].
struct ZeroDensity {
  double degree = 1.0;
  double log_q = 0.0;
  double offset = 0.0;
  double height = 0.0;  ///< cutoff T the tail starts at
  bool active = false;

  double density(double u) const;
  double count(double u) const;
  /// int_T^inf density(u) / u^2 du = (d / pi) (log(q T) + 1) / T.
  double inverse_square_tail() const;
  /// int_T^inf density(u) / u^3 du.
  double inverse_cube_tail() const;
  /// int_T^inf density(u) / u^4 du.
  double inverse_quartic_tail() const;
};

/// Immutable multiset of zeros, sorted by ascending |gamma|.
class ZeroMultiset {
 public:
  ZeroMultiset() = default;

  /// Validates and normalises: zeros with |gamma| <= 1e-12 move into m0,
  /// zeros within 1e-9 of each other are merged.  A mirrored set stores each
  /// pair {gamma, -gamma} once as a positive real gamma.  `height_cutoff`
  /// defaults to the largest |gamma| and may exceed it by at most 1.
  ZeroMultiset(std::vector<Zero> zeros, unsigned m0, bool mirrored, std::string source,
               TailModel tail = TailModel::riemann_von_mangoldt, double degree = 1.0,
               double height_cutoff = -1.0);

  std::span<const Zero> zeros() const noexcept { return zeros_; }
  unsigned m0() const noexcept { return m0_; }
  bool mirrored() const noexcept { return mirrored_; }
  const std::string& source() const noexcept { return source_; }
  double height_cutoff() const noexcept { return height_; }
  TailModel tail_model() const noexcept { return tail_; }
  const ZeroDensity& density() const noexcept { return density_; }
  double degree() const noexcept { return degree_; }

  /// Number of zeros with a mirrored pair counted twice, multiplicities included.
  std::size_t total_count() const noexcept;
  bool all_real(double tol = 1e-9) const noexcept;
  double max_imag() const noexcept;

  /// The first `count` stored zeros; the tail model is refitted.
  ZeroMultiset first(std::size_t count) const;
  /// Zero set of F*: gamma -> -conj(gamma).
  ZeroMultiset dual() const;
  /// Same zeros with another degree for the tail model.
  ZeroMultiset with_degree(double degree) const;

 private:
  void fit_density();

  std::vector<Zero> zeros_;
  unsigned m0_ = 0;
  bool mirrored_ = false;
  std::string source_;
  double height_ = 0.0;
  TailModel tail_ = TailModel::none;
  double degree_ = 1.0;
  ZeroDensity density_;
};

/// plain-imag: whitespace-separated positive decimals (real gamma);
/// csv-complex: "re,im[,mult]" lines.  '#' starts a comment in both.
/// Throws parse_error with the line number, or on an empty input.
ZeroMultiset parse_zeros(std::istream& in, ZeroFormat format, bool mirrored, std::string source,
                         double degree = 1.0);
ZeroMultiset ingest_zeros(const std::filesystem::path& path, ZeroFormat format, bool mirrored, double degree = 1.0);

enum class TailProvenance { none, heuristic };

/// Value of the screw function with the estimated size of the omitted zeros:
/// their mean contribution plus allowances for the cosine remainder and its
/// phase fluctuation, all from the fitted density.
struct ScrewValue {
  double t = 0.0;
  cplx value{};
  double tail_estimate = 0.0;
  TailProvenance provenance = TailProvenance::none;
};

/// g(t) = -iBt - (m0/2) t^2 + sum m (e^{-i gamma t} - 1) / gamma^2 over the stored zeros,
/// summed in ascending |gamma| with compensation; g(-t) = conj g(t).
ScrewValue g_from_zeros(double t, const ZeroMultiset& zeros, double B);

struct RealScrewValue {
  double t = 0.0;
  double value = 0.0;
  double tail_estimate = 0.0;
  TailProvenance provenance = TailProvenance::none;
};

/// Re(-g(t)) = (m0/2) t^2 + sum m (1 - cos(gamma t)) / gamma^2 for a real zero set, t >= 0.
/// Throws precondition_error when a stored zero has |Im gamma| > 1e-9.
RealScrewValue re_neg_g(double t, const ZeroMultiset& zeros);

struct ScrewMeasure {
  /// C_F = B + sum gamma^-1 (1 + gamma^2)^-1 over |gamma| <= T.
  cplx C_F{};
  /// sum m / (1 + |gamma|^2), the truncated total mass of (1+lambda^2)^-1 d tau_F.
  double tau_mass = 0.0;
  /// Modelled mass of the zeros above the cutoff.
  double tau_tail = 0.0;
  /// Modelled size of the omitted part of the C_F sum (zero for mirrored sets).
  double C_tail = 0.0;
};

ScrewMeasure screw_measure_constants(const ZeroMultiset& zeros, double B);

/// g at the nodes start + h (k + x_j) for k < panels and x_j in `offsets`,
/// laid out k-major.  Phases are advanced by recurrence inside blocks of
/// panels, which makes dense quadrature grids affordable for large zero sets.
std::vector<cplx> g_on_panels(const ZeroMultiset& zeros, double B, double start, double h, std::size_t panels,
                              std::span<const double> offsets);

}  // namespace screw
