#include "screw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "screw/errors.hpp"

namespace screw::quad {
namespace {

// QUADPACK qk21 abscissae and weights on [-1, 1].
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478086, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                       0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                       0.295524224714752870173892994651338};

PanelRule build_rule() {
  PanelRule r{};
  for (int i = 0; i < 10; ++i) {
    const double wg = (i % 2 == 1) ? kWg[static_cast<std::size_t>(i / 2)] : 0.0;
    // left node i, mirrored node 20 - i
    r.offsets[static_cast<std::size_t>(i)] = 0.5 * (1.0 - kXgk[static_cast<std::size_t>(i)]);
    r.offsets[static_cast<std::size_t>(20 - i)] = 0.5 * (1.0 + kXgk[static_cast<std::size_t>(i)]);
    r.kronrod[static_cast<std::size_t>(i)] = r.kronrod[static_cast<std::size_t>(20 - i)] = 0.5 * kWgk[static_cast<std::size_t>(i)];
    r.gauss[static_cast<std::size_t>(i)] = r.gauss[static_cast<std::size_t>(20 - i)] = 0.5 * wg;
  }
  r.offsets[10] = 0.5;
  r.kronrod[10] = 0.5 * kWgk[10];
  r.gauss[10] = 0.0;
  return r;
}

struct Panel {
  double a, b;
  Result r;
  bool operator<(const Panel& o) const { return r.error < o.r.error; }
};

}  // namespace

const PanelRule& gk21() {
  static const PanelRule rule = build_rule();
  return rule;
}

Result gk21_panel(const Integrand& f, double a, double b) {
  const auto& rule = gk21();
  const double h = b - a;
  cplx k{}, g{};
  for (std::size_t j = 0; j < 21; ++j) {
    const cplx v = f(a + h * rule.offsets[j]);
    k += rule.kronrod[j] * v;
    g += rule.gauss[j] * v;
  }
  return {k * h, std::abs((k - g) * h), 21, true};
}

Result adaptive(const Integrand& f, double a, double b, const AdaptiveOptions& opts,
                std::span<const double> breakpoints) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) throw precondition_error("adaptive: need finite a <= b");
  if (a == b) return {};
  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  Result total;
  total.evaluations = 0;
  cplx value{};
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p{cuts[i], cuts[i + 1], gk21_panel(f, cuts[i], cuts[i + 1])};
    value += p.r.value;
    error += p.r.error;
    total.evaluations += p.r.evaluations;
    heap.push(p);
  }
  auto satisfied = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
  while (!satisfied()) {
    if (heap.size() >= opts.max_panels) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // no room left to bisect
    heap.pop();
    Panel left{worst.a, mid, gk21_panel(f, worst.a, mid)};
    Panel right{mid, worst.b, gk21_panel(f, mid, worst.b)};
    value += left.r.value + right.r.value - worst.r.value;
    error += left.r.error + right.r.error - worst.r.error;
    total.evaluations += 42;
    heap.push(left);
    heap.push(right);
  }
  // re-add from scratch to shed the drift of incremental updates
  cplx v{};
  double e = 0.0;
  while (!heap.empty()) {
    v += heap.top().r.value;
    e += heap.top().r.error;
    heap.pop();
  }
  total.value = v;
  total.error = e;
  total.converged = e <= std::max(opts.abs_tol, opts.rel_tol * std::abs(v));
  if (!total.converged && opts.throw_on_failure)
    throw convergence_error("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]: error estimate " + std::to_string(e));
  return total;
}

double laplace_cutoff(double decay, int degree, double scale, double eps) {
  if (!(decay > 0.0)) throw precondition_error("laplace_cutoff: decay must be positive");
  if (scale <= 0.0) return 0.0;
  // int_T^inf (1+t)^p e^{-at} dt <= 2 (1+T)^p e^{-aT} / a once a (1+T) >= 2p
  for (double T = 0.0; T < 1e6; T += 0.0625) {
    const double bound = 2.0 * scale * std::pow(1.0 + T, degree) * std::exp(-decay * T) / decay;
    if (bound <= eps && decay * (1.0 + T) >= 2.0 * degree) return T;
  }
  throw convergence_error("laplace_cutoff: no truncation point below 1e6");
}

}  // namespace screw::quad
