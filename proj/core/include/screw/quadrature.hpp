#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>

#include "screw/numeric.hpp"

namespace screw::quad {

/// 21-point Kronrod rule with its embedded 10-point Gauss rule, mapped to [0, 1].
struct PanelRule {
  std::array<double, 21> offsets;  ///< ascending nodes in [0, 1]
  std::array<double, 21> kronrod;  ///< weights summing to 1
  std::array<double, 21> gauss;    ///< zero at the Kronrod-only nodes
};

const PanelRule& gk21();

struct Result {
  cplx value{};
  double error = 0.0;  ///< sum of |Kronrod - Gauss| over the final panels
  std::size_t evaluations = 0;
  bool converged = true;
};

using Integrand = std::function<cplx(double)>;

/// Single GK21 panel on [a, b].
Result gk21_panel(const Integrand& f, double a, double b);

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_panels = 20000;
  /// throw convergence_error instead of returning converged = false
  bool throw_on_failure = true;
};

/// Globally adaptive GK21 on [a, b]; `breakpoints` inside (a, b) seed the
/// initial partition.  Bisects the panel with the largest error until the
/// total error is below max(abs_tol, rel_tol |I|).
Result adaptive(const Integrand& f, double a, double b, const AdaptiveOptions& opts = {},
                std::span<const double> breakpoints = {});

/// Smallest T on a 1/16 grid where int_T^inf scale (1+t)^degree e^{-decay t} dt <= eps.
double laplace_cutoff(double decay, int degree, double scale, double eps);

}  // namespace screw::quad
