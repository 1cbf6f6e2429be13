#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "screw/lfunction.hpp"
#include "screw/zeros.hpp"

namespace screw {

/// One evaluation point of an identity.  `point` is z for Laplace identities
/// and t (real) for pointwise ones.
struct IdentitySample {
  std::string label;  ///< sub-identity name where a report mixes several
  cplx point{};
  cplx lhs{};
  cplx rhs{};
  double residual = 0.0;

  friend bool operator==(const IdentitySample&, const IdentitySample&) = default;
};

/// Largest contribution of each error source, in the units of the residual.
struct ErrorBudget {
  double quadrature = 0.0;  ///< quadrature error estimate
  double truncation = 0.0;  ///< bound on the integral beyond T_int
  double tail = 0.0;        ///< modelled contribution of zeros above the cutoff (heuristic)
  double rhs = 0.0;         ///< error of the closed-form side

  friend bool operator==(const ErrorBudget&, const ErrorBudget&) = default;
};

struct IdentityReport {
  std::string identity_id;
  std::vector<IdentitySample> samples;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool relative = false;  ///< residuals are |lhs - rhs| / |rhs|
  bool pass = false;
  ErrorBudget budget;
  std::string note;

  /// Recomputes max_residual and pass from the samples.
  void finalize();

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

struct LaplaceOptions {
  /// z must satisfy Im z > (half-plane edge) + margin
  double margin = 0.1;
  /// target for the quadrature error relative to the closed-form side
  double quad_tol = 1e-8;
  double rhs_tol = 1e-9;
  EvalOptions eval{};
};

/// {2i, 3i, 1+2i, -1+2i}
std::vector<cplx> default_z_samples();

/// int_0^inf g_F(t) e^{izt} dt against z^-2 (xi'/xi)(1/2 - iz), relative residuals.
/// g is integrated from the zero set on GK21 panels up to the point where the
/// damped quadratic growth bound of g drops below the target.  The zeros above the
/// cutoff enter through the fitted density; that correction is reported as the tail budget.
IdentityReport check_g_laplace(const LFunctionSpec& spec, const ZeroMultiset& zeros, std::span<const cplx> z_set,
                               double threshold = 1e-5, const LaplaceOptions& opts = {});

/// -int_0^inf Phi_F(t) e^{izt} dt against z^-2 (xi'/xi)(1/2 - iz), relative residuals.
IdentityReport check_phi_laplace(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold = 1e-5,
                                 const LaplaceOptions& opts = {});

/// One sample of the elementary suite: a point z and a zero gamma with Im z > max(1/2, Im gamma).
struct ElementarySample {
  cplx z;
  cplx gamma;
};

/// `count` admissible samples with Re z in [-3, 3], Im z in [0.6, 3], drawn from a fixed seed.
std::vector<ElementarySample> random_elementary_samples(std::size_t count, std::uint64_t seed = 20240913);

/// The four calculus identities behind the first-moment transforms:
///   int (-t) e^{izt} = 1/z^2,  int (-t^2/2) e^{izt} = i/z^3,
///   int 4(e^{t/2} + e^{-t/2} - 2) e^{izt} = -z^-2 (1/(s-1) + 1/s),
///   int (e^{-i gamma t} - 1)/gamma^2 e^{izt} = (i/z^2)(1/(z - gamma) + 1/gamma).
/// Residuals are |lhs - rhs| / max(1, |rhs|).
IdentityReport check_elementary(std::span<const ElementarySample> samples, double threshold = 1e-9);

/// int_0^inf sum_{n <= e^t} c(n) (t - log n)/sqrt(n) e^{izt} dt against z^-2 (F'/F)(1/2 - iz).
/// Residuals are |lhs - rhs| / max(1, |rhs|).
IdentityReport check_prime_transform(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold = 1e-6,
                                     const LaplaceOptions& opts = {});

/// The gamma-factor transform for every factor of the spec; absolute residuals.
IdentityReport check_gamma_transform(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold = 1e-6);

struct FFStarReport {
  IdentityReport pointwise;  ///< g_{F*}(t) against conj g_F(t)
  IdentityReport laplace;    ///< 2 int Re g_F e^{izt} against z^-2 [(xi'/xi)_F + (xi'/xi)_{F*}](1/2 - iz)

  friend bool operator==(const FFStarReport&, const FFStarReport&) = default;
};

/// Zeros of F* are taken as -conj(gamma).  `t_grid` defaults to 0, 0.25, ..., 20.
FFStarReport check_ff_star(const LFunctionSpec& spec, const ZeroMultiset& zeros, std::span<const cplx> z_set,
                           double threshold = 1e-5, const LaplaceOptions& opts = {},
                           std::span<const double> t_grid = {});

}  // namespace screw
