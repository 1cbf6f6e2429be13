#include "screw/zero_free.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "screw/errors.hpp"
#include "screw/quadrature.hpp"
#include "screw/special_functions.hpp"

namespace screw {
namespace {

constexpr double kBoundarySlack = 1e-12;

std::uint64_t coefficients_needed(double t) {
  const double x = std::exp(t) * (1.0 + 2.0 * kBoundarySlack * std::max(1.0, t));
  if (x >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(x)));
}

}  // namespace

double phi_max_t(const LFunctionSpec& spec, std::uint64_t budget) {
  if (spec.coefficients.source() == CoefficientSource::none) return std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(spec.coefficients.max_cutoff(budget)));
}

PhiBreakdown phi_F(double t, const LFunctionSpec& spec, double tol, std::uint64_t budget) {
  if (!std::isfinite(t)) throw precondition_error("phi_F: t must be finite");
  if (t < 0.0) {
    PhiBreakdown r = phi_F(-t, spec, tol, budget);
    r.t = t;
    return r;
  }
  PhiBreakdown out;
  out.t = t;
  if (t == 0.0) return out;

  const auto& gd = spec.gamma;
  const double s = std::sinh(0.25 * t);
  out.pole_term = 16.0 * gd.m_F * s * s;

  if (spec.coefficients.source() != CoefficientSource::none) {
    const double cap = phi_max_t(spec, budget);
    if (t > cap * (1.0 + kBoundarySlack))
      throw budget_error("phi_F: t = " + std::to_string(t) + " needs coefficients up to e^t; the largest admissible t is " +
                             std::to_string(cap),
                         cap);
    const auto table = spec.coefficients.table(std::min(coefficients_needed(t), spec.coefficients.max_cutoff(budget)),
                                               budget);
    out.prime_term = -table->weighted_prime_sum(t);
  }

  cplx lin = std::log(gd.Q);
  const double share = tol / std::max<std::size_t>(1, gd.factors.size());
  cplx gam{};
  for (const auto& f : gd.factors) {
    const cplx a = 0.5 * f.lambda + f.mu;
    lin += f.lambda * digamma(a);
    gam += f.lambda * f.lambda * lerch_bracket(t / f.lambda, a, share / (f.lambda * f.lambda));
  }
  out.linear_term = lin * t;
  out.gamma_term = gam;
  out.total = out.pole_term + out.prime_term + out.linear_term + out.gamma_term;
  return out;
}

cplx gamma_bracket(double t, double lambda, cplx mu, double tol) {
  if (t == 0.0) return 0.0;
  return lambda * lerch_bracket(t / lambda, 0.5 * lambda + mu, tol / lambda);
}

GammaTransformValue gamma_term_transform(double lambda, cplx mu, cplx z, double tol) {
  if (!(lambda > 0.0) || mu.real() < 0.0) throw precondition_error("gamma term transform: needs lambda > 0, Re mu >= 0");
  if (!(z.imag() > 0.0)) throw precondition_error("gamma term transform: needs Im z > 0");
  const cplx a = 0.5 * lambda + mu;
  // |lambda B| <= lambda zeta(2, Re a) <= lambda (1/Re(a)^2 + 1/Re(a))
  const double ra = a.real();
  const double bound = lambda * (1.0 / (ra * ra) + 1.0 / ra);
  const double T = quad::laplace_cutoff(z.imag(), 0, bound, 0.1 * tol);
  const quad::Integrand f = [&](double t) { return -gamma_bracket(t, lambda, mu) * std::exp(cplx{0.0, 1.0} * z * t); };
  std::vector<double> cuts = {1e-6, 1e-4, 1e-2, 0.1, 0.5};
  for (double c = 1.0; c < T; c += 1.0) cuts.push_back(c);
  quad::AdaptiveOptions opts;
  opts.abs_tol = 0.1 * tol;
  opts.rel_tol = 0.0;
  GammaTransformValue out;
  out.lhs = quad::adaptive(f, 0.0, T, opts, cuts).value;
  const cplx s = 0.5 - cplx{0.0, 1.0} * z;
  out.rhs = (digamma(lambda * s + mu) - digamma(a)) / (z * z);
  return out;
}

double phi_gamma_term_check(double lambda, cplx mu, std::span<const cplx> z_samples, double tol) {
  double worst = 0.0;
  for (const cplx z : z_samples) {
    const auto v = gamma_term_transform(lambda, mu, z, tol);
    worst = std::max(worst, std::abs(v.lhs - v.rhs));
  }
  return worst;
}

}  // namespace screw
