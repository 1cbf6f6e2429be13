#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "screw/coefficients.hpp"
#include "screw/numeric.hpp"

namespace screw {

/// One factor Gamma(lambda s + mu) of the gamma factor.
struct GammaFactor {
  double lambda = 0.5;
  cplx mu{};

  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

/// Functional-equation data: xi_F(s) = s^m (s-1)^m Q^s prod Gamma(lambda_j s + mu_j) F(s),
/// xi_F(s) = omega conj(xi_F(1 - conj s)).
struct GammaFactorData {
  double Q = 1.0;
  std::vector<GammaFactor> factors;
  cplx omega{1.0};
  unsigned m_F = 0;  ///< order of the pole at s = 1

  /// Q > 0, lambda_j > 0, Re mu_j >= 0, ||omega| - 1| <= 1e-12.
  void validate() const;
  /// d_F = 2 sum lambda_j.
  double degree() const noexcept;

  friend bool operator==(const GammaFactorData&, const GammaFactorData&) = default;
};

/// A member of the semi-extended Selberg class described by its axiom data.
struct LFunctionSpec {
  std::string id;
  GammaFactorData gamma;
  CoefficientProvider coefficients;
  /// Real B_F with i B_F = (xi'/xi)(1/2); empty when unknown.
  std::optional<double> B;
  unsigned m0 = 0;  ///< multiplicity of the zero of xi_F(1/2 - iz) at z = 0
  bool self_dual = false;

  /// Checks gamma data and that self-dual specs with omega = 1 have B = 0.
  void validate() const;
  /// B_F, or precondition_error when it was not supplied.
  double central_B() const;

  friend bool operator==(const LFunctionSpec&, const LFunctionSpec&) = default;
};

/// Validates and fills B = 0 where the functional equation forces it.
LFunctionSpec make_spec(LFunctionSpec spec);

struct EvalOptions {
  /// Dirichlet series are only summed for Re(s) > 1 + margin.
  double margin = 0.05;
  std::uint64_t budget = default_coefficient_budget();
};

/// F'/F(s) = -sum_{n>=2} c(n) n^{-s}, truncated where the tail bound
/// C N^{1-sigma} (log N / (sigma-1) + 1/(sigma-1)^2) drops below `tol`.
/// C = 1 for zeta and quadratic characters; otherwise C is the largest
/// |c(n)| / log n seen in the available table and the result is marked heuristic.
///
/// Throws domain_error for Re(s) <= 1 + margin and convergence_error when the
/// bound cannot reach `tol` inside the coefficient budget.
Estimate f_log_derivative(const LFunctionSpec& spec, cplx s, double tol, const EvalOptions& opts = {});

/// (xi'/xi)(s) = m/(s-1) + m/s + F'/F(s) + log Q + sum lambda_j psi(lambda_j s + mu_j).
/// Throws pole_error at s = 0, 1 when m_F > 0; otherwise as f_log_derivative.
Estimate xi_log_derivative(const LFunctionSpec& spec, cplx s, double tol, const EvalOptions& opts = {});

/// Data of F*(s) = conj F(conj s).  Self-dual specs are returned unchanged.
LFunctionSpec dual(const LFunctionSpec& spec);

// Built-in catalog ----------------------------------------------------------

/// zeta(s): Q = pi^{-1/2}, one factor Gamma(s/2), m_F = 1.
LFunctionSpec zeta_spec();
/// zeta(s) with Gamma(s/2) split by the duplication formula:
/// Q = (2/pi)^{1/2}, factors Gamma(s/4) Gamma(s/4 + 1/2).
LFunctionSpec zeta_duplicated_spec();
/// L(s, chi_d) for a fundamental discriminant d: Q = (|d|/pi)^{1/2},
/// one factor Gamma((s + kappa)/2) with kappa = 0 for d > 0 and 1 for d < 0.
LFunctionSpec quadratic_dirichlet_spec(std::int64_t d);

std::vector<LFunctionSpec> builtin_catalog();
/// Looks up "zeta", "zeta-dup" or "dirichlet:<d>".
std::optional<LFunctionSpec> find_builtin(const std::string& id);

// Spec files ----------------------------------------------------------------

/// JSON document {id, mF, Q, factors:[{lambda, mu_re, mu_im}], omega_re, omega_im,
/// B, m0, self_dual, coeffs}.  coeffs is "zeta", "none", {"kronecker": d},
/// {"file": path} or {"values": [[n, re, im], ...]}; an optional
/// "coeff_transform" is "identity", "conjugate" or "twice_real".
std::string spec_to_json(const LFunctionSpec& spec, int indent = 2);
/// Relative coefficient-file paths are resolved against `base_dir`.
LFunctionSpec spec_from_json(const std::string& text, const std::filesystem::path& base_dir = {});
LFunctionSpec load_spec_file(const std::filesystem::path& path);

}  // namespace screw
