#pragma once

#include <cstdint>
#include <span>

#include "screw/lfunction.hpp"
#include "screw/numeric.hpp"

namespace screw {

/// Phi_F(t) split into its four summands; total is their sum.
struct PhiBreakdown {
  double t = 0.0;
  cplx pole_term{};    ///< 4 m (e^{t/2} + e^{-t/2} - 2)
  cplx prime_term{};   ///< -sum_{n <= e^t} c(n) (t - log n) / sqrt(n)
  cplx linear_term{};  ///< [log Q + sum lambda psi(lambda/2 + mu)] t
  cplx gamma_term{};   ///< sum lambda^2 B(t / lambda, lambda/2 + mu)
  cplx total{};

  friend bool operator==(const PhiBreakdown&, const PhiBreakdown&) = default;
};

/// Largest t the zero-free formula can reach with the given coefficient budget.
double phi_max_t(const LFunctionSpec& spec, std::uint64_t budget = default_coefficient_budget());

/// The zero-free representation Phi_F(t) = -g_F(t), evaluated from the spec
/// alone.  Each special-function term is accurate to `tol`; the prime sum is
/// exact over the sieved range.  Phi_F(-t) = Phi_F(t).
///
/// Throws budget_error when e^|t| exceeds the coefficients available; the
/// error carries the largest admissible t.
PhiBreakdown phi_F(double t, const LFunctionSpec& spec, double tol = 1e-12,
                   std::uint64_t budget = default_coefficient_budget());

/// lambda B(t / lambda, lambda/2 + mu), the integrand of the gamma-term check.
cplx gamma_bracket(double t, double lambda, cplx mu, double tol = 1e-15);

struct GammaTransformValue {
  cplx lhs{};  ///< quadrature of -int_0^inf lambda B(t/lambda, a) e^{izt} dt
  cplx rhs{};  ///< z^-2 (psi(lambda s + mu) - psi(a)), s = 1/2 - iz, a = lambda/2 + mu
};

GammaTransformValue gamma_term_transform(double lambda, cplx mu, cplx z, double tol = 1e-10);

/// Max over `z_samples` of
///   | -int_0^inf lambda B(t/lambda, lambda/2 + mu) e^{izt} dt - z^-2 (psi(lambda s + mu) - psi(lambda/2 + mu)) |
/// with s = 1/2 - iz.  Needs lambda > 0, Re mu >= 0 and Im z > 0.
/// Throws convergence_error when the quadrature cannot reach `tol`.
double phi_gamma_term_check(double lambda, cplx mu, std::span<const cplx> z_samples, double tol = 1e-10);

}  // namespace screw
