#include "screw/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "screw/errors.hpp"
#include "screw/quadrature.hpp"
#include "screw/zero_free.hpp"

namespace screw {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const char* kAssumption =
    "unchecked hypothesis: F has no real zeros except possibly at s = 1/2; "
    "the sign is sampled on a grid, not certified between grid points";

struct Point {
  double value;
  double tol;
};

void golden_refine(const std::function<double(double)>& f, double lo, double hi, double& best_t, double& best_v) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-10 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double t = fc < fd ? c : d;
  const double v = std::min(fc, fd);
  if (v < best_v) {
    best_v = v;
    best_t = t;
  }
}

ScanReport run_scan(Evaluator ev, const std::function<Point(double)>& eval, double t_min, double t_max, double step,
                    const ScanOptions& opts) {
  if (!(t_min >= 0.0) || !(t_max > t_min) || !(step > 0.0))
    throw precondition_error("scan: need 0 <= t_min < t_max and step > 0");
  ScanReport rep;
  rep.evaluator = ev;
  rep.tolerance = opts.tolerance;
  rep.assumption = kAssumption;
  rep.t_grid = make_grid(t_min, t_max, step);
  rep.min_value = std::numeric_limits<double>::infinity();
  std::size_t imin = 0;
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
    const double t = rep.t_grid[i];
    const Point p = eval(t);
    const double tol = opts.tolerance.value_or(p.tol);
    rep.values.push_back(p.value);
    rep.tolerances.push_back(tol);
    if (p.value < -tol) rep.violations.push_back({t, p.value});
    if (p.value < rep.min_value) {
      rep.min_value = p.value;
      imin = i;
    }
  }
  rep.min_location = rep.t_grid[imin];
  rep.refined_min_value = rep.min_value;
  rep.refined_min_location = rep.min_location;
  if (opts.refine) {
    const double lo = std::max(t_min, rep.min_location - step);
    const double hi = std::min(t_max, rep.min_location + step);
    if (hi > lo)
      golden_refine([&](double t) { return eval(t).value; }, lo, hi, rep.refined_min_location, rep.refined_min_value);
  }
  return rep;
}

}  // namespace

const char* to_string(Evaluator e) { return e == Evaluator::zero_free ? "zero_free" : "zero_sum"; }

Evaluator evaluator_from_string(const std::string& s) {
  if (s == "zero_free") return Evaluator::zero_free;
  if (s == "zero_sum") return Evaluator::zero_sum;
  throw precondition_error("unknown evaluator '" + s + "' (expected zero_free or zero_sum)");
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop >= start)) throw precondition_error("grid: need start <= stop");
  if (!(step > 0.0)) throw precondition_error("grid: step must be positive");
  const double span = (stop - start) / step;
  if (span > 1e8) throw precondition_error("grid: more than 1e8 points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> g;
  g.reserve(count + 2);
  for (std::size_t k = 0; k <= count; ++k) g.push_back(std::min(stop, start + static_cast<double>(k) * step));
  if (g.back() < stop - 1e-12 * std::max(1.0, std::abs(stop))) g.push_back(stop);
  return g;
}

ScanReport scan_sign(const ZeroMultiset& zeros, double B, double t_min, double t_max, double step,
                     const ScanOptions& opts) {
  double mass = 0.0;
  for (const auto& z : zeros.zeros()) mass += (zeros.mirrored() ? 4.0 : 2.0) * z.mult / std::norm(z.gamma);
  const bool real = zeros.all_real();
  const auto eval = [&](double t) -> Point {
    const double v = real ? re_neg_g(t, zeros).value : -g_from_zeros(t, zeros, B).value.real();
    const double scale = std::max({1.0, std::abs(v), mass + 0.5 * zeros.m0() * t * t});
    return {v, 64.0 * kEps * scale};
  };
  return run_scan(Evaluator::zero_sum, eval, t_min, t_max, step, opts);
}

ScanReport scan_sign(const LFunctionSpec& spec, double t_min, double t_max, double step, const ScanOptions& opts) {
  const double cap = phi_max_t(spec, opts.budget);
  if (t_max > cap)
    throw budget_error("scan: t_max = " + std::to_string(t_max) + " exceeds the zero-free range t <= " +
                           std::to_string(cap),
                       cap);
  const auto eval = [&](double t) -> Point {
    const auto p = phi_F(t, spec, opts.phi_tol, opts.budget);
    const double scale = std::abs(p.pole_term) + std::abs(p.prime_term) + std::abs(p.linear_term) + std::abs(p.gamma_term);
    return {p.total.real(), 10.0 * opts.phi_tol + 64.0 * kEps * scale};
  };
  return run_scan(Evaluator::zero_free, eval, t_min, t_max, step, opts);
}

bool MomentEntry::operator==(const MomentEntry& o) const {
  const bool stab = (std::isnan(stability) && std::isnan(o.stability)) || stability == o.stability;
  return n == o.n && mu == o.mu && mu_raw == o.mu_raw && cutoff_T == o.cutoff_T && zero_count == o.zero_count && stab &&
         quad_error == o.quad_error;
}

MomentTable moments(const ZeroMultiset& zeros, double B, unsigned n_max, std::span<const std::size_t> cutoffs,
                    double tol) {
  if (n_max > 20) throw precondition_error("moments: n_max must be at most 20");
  if (cutoffs.size() < 2) throw precondition_error("moments: need at least two cutoffs");
  if (!zeros.all_real()) throw precondition_error("moments: zero set must be real");

  const auto& rule = quad::gk21();
  std::vector<std::vector<MomentEntry>> by_cutoff;
  for (const std::size_t count : cutoffs) {
    const ZeroMultiset zs = count >= zeros.zeros().size() ? zeros : zeros.first(count);
    double mass = 0.0, gmax = 0.0;
    for (const auto& z : zs.zeros()) {
      mass += (zs.mirrored() ? 2.0 : 1.0) * z.mult / std::norm(z.gamma);
      gmax = std::max(gmax, std::abs(z.gamma));
    }
    // |g(t)| <= |B| t + m0 t^2/2 + 2 mass, the integrand <= scale (1+t)^{n+2} e^{-t/2}
    const double scale = std::abs(B) + 0.5 * zs.m0() + 2.0 * mass;
    std::vector<MomentEntry> row(n_max + 1);
    if (scale > 0.0) {
      const double T = quad::laplace_cutoff(0.5, static_cast<int>(n_max) + 2, scale, 1e-3 * tol * scale);
      const double h0 = gmax > 0.0 ? std::min(0.25, 16.0 / gmax) : 0.25;
      const auto panels = static_cast<std::size_t>(std::ceil(T / h0));
      const double h = T / static_cast<double>(panels);
      const auto vals = g_on_panels(zs, B, 0.0, h, panels, rule.offsets);
      std::vector<compensated_sum<double>> kr(n_max + 1);
      std::vector<double> err(n_max + 1, 0.0);
      for (std::size_t k = 0; k < panels; ++k) {
        std::vector<double> pk(n_max + 1, 0.0), pg(n_max + 1, 0.0);
        for (std::size_t j = 0; j < 21; ++j) {
          const double t = h * (static_cast<double>(k) + rule.offsets[j]);
          double w = std::exp(-0.5 * t) * -vals[k * 21 + j].real();
          for (unsigned n = 0; n <= n_max; ++n) {
            pk[n] += rule.kronrod[j] * w;
            pg[n] += rule.gauss[j] * w;
            w *= t;
          }
        }
        for (unsigned n = 0; n <= n_max; ++n) {
          kr[n] += pk[n] * h;
          err[n] += std::abs(pk[n] - pg[n]) * h;
        }
      }
      for (unsigned n = 0; n <= n_max; ++n) {
        row[n].mu_raw = kr[n].value();
        row[n].quad_error = err[n];
      }
    }
    // each omitted zero adds about n! 2^{n+1} / gamma^2
    const double tail = zs.density().inverse_square_tail();
    double fact = 2.0;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (n > 0) fact *= 2.0 * n;
      row[n].n = n;
      row[n].mu = row[n].mu_raw + fact * tail;
      row[n].cutoff_T = zs.height_cutoff();
      row[n].zero_count = zs.zeros().size();
    }
    by_cutoff.push_back(std::move(row));
  }

  MomentTable out;
  for (unsigned n = 0; n <= n_max; ++n) {
    for (std::size_t c = 0; c < by_cutoff.size(); ++c) {
      MomentEntry e = by_cutoff[c][n];
      e.stability = c == 0 ? std::numeric_limits<double>::quiet_NaN()
                           : std::abs(e.mu - by_cutoff[c - 1][n].mu) / std::max(std::abs(e.mu), 1e-300);
      out.entries.push_back(e);
    }
    const double last = out.entries.back().stability;
    if (last > 1e-2)
      out.warnings.push_back("moment n = " + std::to_string(n) + " changed by " + std::to_string(last) +
                             " (relative) at the largest cutoff");
  }
  return out;
}

LFunctionSpec symmetrize_ff_star(const LFunctionSpec& spec) {
  spec.validate();
  LFunctionSpec g;
  g.id = "sym(" + spec.id + ")";
  g.gamma.Q = spec.gamma.Q * spec.gamma.Q;
  g.gamma.factors = spec.gamma.factors;
  for (const auto& f : spec.gamma.factors) g.gamma.factors.push_back({f.lambda, std::conj(f.mu)});
  g.gamma.omega = 1.0;
  g.gamma.m_F = 2 * spec.gamma.m_F;
  g.coefficients = spec.coefficients.twice_real();
  g.B = 0.0;
  g.m0 = 2 * spec.m0;
  g.self_dual = true;
  return make_spec(std::move(g));
}

}  // namespace screw
