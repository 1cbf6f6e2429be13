#pragma once

#include "screw/numeric.hpp"

namespace screw {

/// Arguments of the Lerch transcendent at s = 2: Phi(z, 2, a) = sum_{n>=0} z^n / (n + a)^2.
struct LerchParams {
  double z = 1.0;  ///< 0 < z <= 1
  cplx a{1.0};     ///< Re(a) > 0

  void validate() const;
};

/// Complex digamma psi(w) = Gamma'(w)/Gamma(w).
///
/// Upward recurrence psi(w+1) = psi(w) + 1/w moves the argument to Re(w) >= 16,
/// where the Stirling series is summed until its terms drop below `tol`.
/// Arguments with Re(w) < 0 go through the reflection formula first.
/// Throws pole_error at w = 0, -1, -2, ...
cplx digamma(cplx w, double tol = 1e-16);

/// Hurwitz zeta at s = 2, i.e. the trigamma function psi'(a).  Requires Re(a) > 0.
cplx hurwitz_zeta2(cplx a, double tol = 1e-16);

/// Phi(z, 2, a) for 0 < z <= 1, Re(a) > 0, to absolute error `tol`.
///
/// For z away from 1 the series is summed directly with the tail bound
/// z^(N+1) / (N + Re a).  For 1 - z < 1e-3 the value is assembled from
/// hurwitz_zeta2(a) and lerch_bracket, whose small-x expansion converges fast.
cplx lerch_phi2(const LerchParams& p, double tol = 1e-16);

/// B(x, a) = sum_{n>=0} (1 - e^{-x(n+a)}) / (n+a)^2
///         = Phi(1, 2, a) - e^{-x a} Phi(e^{-x}, 2, a).
///
/// This is the combination that appears in the gamma-factor part of the
/// zero-free screw function with x = t / lambda.  It behaves like
/// x (1 - log x - gamma_0 - psi(a)) near x = 0, so it is not analytic there;
/// small x is handled by the exact expansion
///   B = x (1 - log x - gamma_0 - psi(a)) - sum_{k>=1} (-1)^k B_k(a)/k! * x^{k+1} / (k (k+1)),
/// valid for x < 2 pi, where B_k(a) are Bernoulli polynomials.
cplx lerch_bracket(double x, cplx a, double tol = 1e-16);

/// Bernoulli number B_k (B_1 = -1/2), k <= 120.
double bernoulli_number(int k);

}  // namespace screw
