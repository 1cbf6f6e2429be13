#include "screw/transform_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "screw/errors.hpp"
#include "screw/quadrature.hpp"
#include "screw/special_functions.hpp"
#include "screw/zero_free.hpp"

namespace screw {
namespace {

constexpr cplx I{0.0, 1.0};

cplx s_of(cplx z) { return 0.5 - I * z; }

void require_half_plane(std::span<const cplx> zs, double edge, const char* what) {
  for (const cplx z : zs)
    if (!(z.imag() > edge)) {
      std::ostringstream msg;
      msg << what << ": sample z = " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
          << "i violates Im z > " << edge;
      throw precondition_error(msg.str());
    }
}

double relative_residual(cplx lhs, cplx rhs) {
  const double d = std::abs(lhs - rhs);
  return std::abs(rhs) > 0.0 ? d / std::abs(rhs) : d;
}

double mixed_residual(cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

struct PanelLaplace {
  std::vector<cplx> value;
  std::vector<double> error;
  std::vector<double> truncation;
};

// Laplace transforms of g (or Re g) at several z from one set of panel values.
PanelLaplace g_laplace_panels(const ZeroMultiset& zs, double B, std::span<const cplx> z, std::span<const double> eps,
                              bool real_part) {
  const double kappa = std::max(0.0, zs.max_imag());
  double mass = zs.density().inverse_square_tail();
  for (const auto& zero : zs.zeros()) mass += (zs.mirrored() ? 2.0 : 1.0) * zero.mult / std::norm(zero.gamma);
  // |g(t)| <= |B| t + m0 t^2 / 2 + 2 mass e^{kappa t}
  const double scale = std::abs(B) + 0.5 * zs.m0() + 2.0 * mass;

  double T = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i].imag() > kappa)) throw precondition_error("Laplace transform of g: need Im z above every Im gamma");
    T = std::max(T, quad::laplace_cutoff(z[i].imag() - kappa, 2, scale, eps[i]));
  }
  PanelLaplace out;
  out.value.assign(z.size(), {});
  out.error.assign(z.size(), 0.0);
  out.truncation.assign(z.size(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = z[i].imag() - kappa;
    out.truncation[i] = 2.0 * scale * (1.0 + T) * (1.0 + T) * std::exp(-a * T) / a;
  }
  if (T == 0.0) return out;

  double gmax = 0.0;
  for (const auto& zero : zs.zeros()) gmax = std::max(gmax, std::abs(zero.gamma));
  double h0 = gmax > 0.0 ? std::min(0.25, 16.0 / gmax) : 0.25;
  const auto& rule = quad::gk21();

  for (int attempt = 0; attempt < 4; ++attempt, h0 *= 0.5) {
    const auto panels = static_cast<std::size_t>(std::ceil(T / h0));
    const double h = T / static_cast<double>(panels);
    auto vals = g_on_panels(zs, B, 0.0, h, panels, rule.offsets);
    if (real_part)
      for (auto& v : vals) v = v.real();
    bool ok = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      compensated_sum<cplx> total;
      double err = 0.0;
      // e^{izt} at the nodes of panel k from the nodes of panel 0 times e^{izhk}
      std::array<cplx, 21> base{};
      for (std::size_t j = 0; j < 21; ++j) base[j] = std::exp(I * z[i] * (h * rule.offsets[j]));
      const cplx step = std::exp(I * z[i] * h);
      cplx shift = 1.0;
      for (std::size_t k = 0; k < panels; ++k) {
        if (k % 64 == 0) shift = std::exp(I * z[i] * (h * static_cast<double>(k)));
        cplx kr{}, ga{};
        const cplx* row = vals.data() + k * 21;
        for (std::size_t j = 0; j < 21; ++j) {
          const cplx v = row[j] * base[j];
          kr += rule.kronrod[j] * v;
          ga += rule.gauss[j] * v;
        }
        total += kr * shift * h;
        err += std::abs((kr - ga) * shift) * h;
        shift *= step;
      }
      out.value[i] = total.value();
      out.error[i] = err;
      if (err > eps[i]) ok = false;
    }
    if (ok) break;
  }
  return out;
}

// (i/z) int_T^inf density(u) / (z^2 - u^2) du: the modelled transform of the zeros above the cutoff,
// paired as gamma, -gamma.
cplx tail_correction(const ZeroDensity& d, cplx z) {
  if (!d.active || d.height <= 0.0) return 0.0;
  const double T = d.height;
  const quad::Integrand f = [&](double w) {
    const double u = T * std::exp(w);
    return cplx{d.density(u) * u} / (z * z - u * u);
  };
  quad::AdaptiveOptions o;
  o.abs_tol = 1e-18;
  o.rel_tol = 1e-10;
  o.throw_on_failure = false;
  const double cuts[] = {1.0, 2.0, 5.0, 10.0, 20.0};
  return I / z * quad::adaptive(f, 0.0, 60.0, o, cuts).value;
}

// int_0^inf P(t) e^{izt} dt for P(t) = sum_{n <= e^t} c(n)(t - log n)/sqrt(n), panel by panel
// between consecutive log n.
struct PrimeLaplace {
  cplx value;
  double error;
  double truncation;
  bool heuristic;
};

double prime_growth_constant(const LFunctionSpec& spec, std::uint64_t budget, bool& heuristic) {
  const auto& cp = spec.coefficients;
  double c = 1.0;
  heuristic = false;
  switch (cp.source()) {
    case CoefficientSource::none:
      return 0.0;
    case CoefficientSource::zeta:
    case CoefficientSource::kronecker:
      break;
    default:
      c = cp.table(std::min<std::uint64_t>(cp.max_cutoff(budget), 1u << 16), budget)->growth_constant();
      heuristic = true;
  }
  if (cp.transform() == CoefficientTransform::twice_real) c *= 2.0;
  return c;
}

PrimeLaplace prime_laplace(const LFunctionSpec& spec, cplx z, double eps, std::uint64_t budget) {
  bool heuristic = false;
  const double C = prime_growth_constant(spec, budget, heuristic);
  if (C == 0.0) return {0.0, 0.0, 0.0, heuristic};
  // P'(t) = sum_{n <= e^t} c(n)/sqrt(n) and psi(x) < 1.04 x give |P(t)| <= 4.2 C e^{t/2}
  const double a = z.imag() - 0.5;
  if (!(a > 0.0)) throw precondition_error("prime transform: need Im z > 1/2");
  const double T = quad::laplace_cutoff(a, 0, 4.2 * C, eps);
  const double cap = std::log(static_cast<double>(spec.coefficients.max_cutoff(budget)));
  if (T > cap)
    throw budget_error("prime transform: truncation point " + std::to_string(T) + " exceeds the coefficient range",
                       cap);
  const auto table = spec.coefficients.table(
      std::min(spec.coefficients.max_cutoff(budget), static_cast<std::uint64_t>(std::ceil(std::exp(T))) + 1), budget);

  std::vector<double> cuts{0.0};
  for (const auto& e : table->entries()) {
    if (e.log_n >= T) break;
    if (e.log_n > cuts.back()) cuts.push_back(e.log_n);
  }
  cuts.push_back(T);
  const auto& rule = quad::gk21();
  compensated_sum<cplx> total;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.125)));
    const double h = (hi - lo) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double a0 = lo + p * h;
      cplx kr{}, ga{};
      for (std::size_t j = 0; j < 21; ++j) {
        const double t = a0 + h * rule.offsets[j];
        const cplx v = table->weighted_prime_sum(t) * std::exp(I * z * t);
        kr += rule.kronrod[j] * v;
        ga += rule.gauss[j] * v;
      }
      total += kr * h;
      err += std::abs(kr - ga) * h;
    }
  }
  const double trunc = 4.2 * C * std::exp(-a * T) / a;
  return {total.value(), err, trunc, heuristic};
}

void absorb(ErrorBudget& b, double quadrature, double truncation, double tail, double rhs) {
  b.quadrature = std::max(b.quadrature, quadrature);
  b.truncation = std::max(b.truncation, truncation);
  b.tail = std::max(b.tail, tail);
  b.rhs = std::max(b.rhs, rhs);
}

}  // namespace

void IdentityReport::finalize() {
  max_residual = 0.0;
  for (const auto& s : samples) max_residual = std::max(max_residual, s.residual);
  pass = std::isfinite(max_residual) && max_residual <= threshold;
}

std::vector<cplx> default_z_samples() { return {{0.0, 2.0}, {0.0, 3.0}, {1.0, 2.0}, {-1.0, 2.0}}; }

IdentityReport check_g_laplace(const LFunctionSpec& spec, const ZeroMultiset& zeros, std::span<const cplx> z_set,
                               double threshold, const LaplaceOptions& opts) {
  require_half_plane(z_set, 0.5 + opts.margin, "check_g_laplace");
  const double B = spec.central_B();
  IdentityReport rep;
  rep.identity_id = "g_laplace";
  rep.threshold = threshold;
  rep.relative = true;

  std::vector<Estimate> rhs;
  std::vector<double> eps;
  for (const cplx z : z_set) {
    auto e = xi_log_derivative(spec, s_of(z), opts.rhs_tol, opts.eval);
    e.value /= z * z;
    e.error /= std::norm(z);
    rhs.push_back(e);
    eps.push_back(opts.quad_tol * (std::abs(e.value) > 0.0 ? std::abs(e.value) : 1.0));
  }
  const auto lap = g_laplace_panels(zeros, B, z_set, eps, false);
  for (std::size_t i = 0; i < z_set.size(); ++i) {
    const cplx corr = tail_correction(zeros.density(), z_set[i]);
    const cplx lhs = lap.value[i] + corr;
    const double scale = std::abs(rhs[i].value) > 0.0 ? std::abs(rhs[i].value) : 1.0;
    rep.samples.push_back({"", z_set[i], lhs, rhs[i].value, relative_residual(lhs, rhs[i].value)});
    absorb(rep.budget, lap.error[i] / scale, lap.truncation[i] / scale, std::abs(corr) / scale, rhs[i].error / scale);
  }
  const auto& d = zeros.density();
  std::ostringstream note;
  note << zeros.total_count() << " zeros up to height " << zeros.height_cutoff();
  if (d.active) note << "; zeros above the cutoff modelled by the fitted density (heuristic), log q = " << d.log_q;
  rep.note = note.str();
  rep.finalize();
  return rep;
}

IdentityReport check_phi_laplace(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold,
                                 const LaplaceOptions& opts) {
  require_half_plane(z_set, 0.5 + opts.margin, "check_phi_laplace");
  IdentityReport rep;
  rep.identity_id = "phi_laplace";
  rep.threshold = threshold;
  rep.relative = true;

  LFunctionSpec smooth = spec;
  smooth.coefficients = CoefficientProvider::none();
  const auto& gd = spec.gamma;
  cplx lin = std::log(gd.Q);
  double gmax = 0.0;
  for (const auto& f : gd.factors) {
    const cplx a = 0.5 * f.lambda + f.mu;
    lin += f.lambda * digamma(a);
    gmax += f.lambda * f.lambda * (1.0 / (a.real() * a.real()) + 1.0 / a.real());
  }
  bool heuristic = false;
  const double C = prime_growth_constant(spec, opts.eval.budget, heuristic);

  for (const cplx z : z_set) {
    auto e = xi_log_derivative(spec, s_of(z), opts.rhs_tol, opts.eval);
    const cplx rhs = e.value / (z * z);
    const double scale = std::abs(rhs) > 0.0 ? std::abs(rhs) : 1.0;
    // the prime part dominates the cost, so each part gets a share of the threshold
    const double eps = 0.01 * threshold * scale;

    const double a = z.imag() - 0.5;
    const double T = quad::laplace_cutoff(a, 1, 4.0 * gd.m_F + std::abs(lin) + gmax, eps);
    const quad::Integrand f = [&](double t) { return -phi_F(t, smooth, 1e-14).total * std::exp(I * z * t); };
    std::vector<double> cuts = {1e-6, 1e-4, 1e-2, 0.1, 0.5};
    for (double c = 1.0; c < T; c += 1.0) cuts.push_back(c);
    quad::AdaptiveOptions o;
    o.abs_tol = eps;
    o.rel_tol = 0.0;
    const auto smooth_part = quad::adaptive(f, 0.0, T, o, cuts);
    const auto prime_part = prime_laplace(spec, z, eps, opts.eval.budget);
    const cplx lhs = smooth_part.value + prime_part.value;
    const double trunc = 2.0 * (4.0 * gd.m_F + std::abs(lin) + gmax) * (1.0 + T) * std::exp(-a * T) / a;
    rep.samples.push_back({"", z, lhs, rhs, relative_residual(lhs, rhs)});
    absorb(rep.budget, (smooth_part.error + prime_part.error) / scale, (trunc + prime_part.truncation) / scale, 0.0,
           e.error / std::norm(z) / scale);
    heuristic = heuristic || prime_part.heuristic;
  }
  if (heuristic) rep.note = "coefficient growth constant taken from the table (heuristic truncation)";
  rep.finalize();
  return rep;
}

std::vector<ElementarySample> random_elementary_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.6, 3.0), gre(-5.0, 5.0), unit(0.0, 1.0);
  std::vector<ElementarySample> out;
  while (out.size() < count) {
    const cplx z{re(rng), im(rng)};
    const double top = std::min(0.3, z.imag() - 0.1);
    const cplx g{gre(rng), -0.3 + (top + 0.3) * unit(rng)};
    if (std::abs(g) < 0.2) continue;
    out.push_back({z, g});
  }
  return out;
}

IdentityReport check_elementary(std::span<const ElementarySample> samples, double threshold) {
  IdentityReport rep;
  rep.identity_id = "elementary";
  rep.threshold = threshold;
  quad::AdaptiveOptions o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-13;
  constexpr double eps = 1e-14;

  auto run = [&](const char* label, cplx z, const quad::Integrand& base, double decay, int degree, double scale,
                 cplx rhs) {
    if (!(decay > 0.0)) throw precondition_error(std::string("check_elementary: sample outside the half-plane of ") + label);
    const double T = quad::laplace_cutoff(decay, degree, scale, eps);
    std::vector<double> cuts;
    for (double c = 1.0; c < T; c += 1.0) cuts.push_back(c);
    const quad::Integrand f = [&](double t) { return base(t) * std::exp(I * z * t); };
    const auto r = quad::adaptive(f, 0.0, T, o, cuts);
    rep.samples.push_back({label, z, r.value, rhs, mixed_residual(r.value, rhs)});
    absorb(rep.budget, r.error, eps, 0.0, 0.0);
  };

  for (const auto& smp : samples) {
    const cplx z = smp.z, g = smp.gamma;
    if (!(z.imag() > 0.5)) throw precondition_error("check_elementary: need Im z > 1/2");
    const cplx s = s_of(z);
    run("linear", z, [](double t) { return cplx{-t}; }, z.imag(), 1, 1.0, 1.0 / (z * z));
    run("quadratic", z, [](double t) { return cplx{-0.5 * t * t}; }, z.imag(), 2, 0.5, I / (z * z * z));
    run(
        "pole", z,
        [](double t) {
          const double sh = std::sinh(0.25 * t);
          return cplx{16.0 * sh * sh};
        },
        z.imag() - 0.5, 0, 8.0, -(1.0 / (s - 1.0) + 1.0 / s) / (z * z));
    const double kappa = std::max(0.0, g.imag());
    run(
        "single_zero", z, [g](double t) { return screw::expm1(-I * g * t) / (g * g); }, z.imag() - kappa, 0,
        2.0 / std::norm(g), I / (z * z) * (1.0 / (z - g) + 1.0 / g));
  }
  rep.finalize();
  return rep;
}

IdentityReport check_prime_transform(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold,
                                     const LaplaceOptions& opts) {
  require_half_plane(z_set, 0.5 + opts.margin, "check_prime_transform");
  IdentityReport rep;
  rep.identity_id = "prime_transform";
  rep.threshold = threshold;
  bool heuristic = false;
  for (const cplx z : z_set) {
    auto e = f_log_derivative(spec, s_of(z), opts.rhs_tol, opts.eval);
    const cplx rhs = e.value / (z * z);
    const auto lap = prime_laplace(spec, z, 0.01 * threshold, opts.eval.budget);
    rep.samples.push_back({"", z, lap.value, rhs, mixed_residual(lap.value, rhs)});
    absorb(rep.budget, lap.error, lap.truncation, 0.0, e.error / std::norm(z));
    heuristic = heuristic || lap.heuristic || e.heuristic;
  }
  if (heuristic) rep.note = "coefficient growth constant taken from the table (heuristic truncation)";
  rep.finalize();
  return rep;
}

IdentityReport check_gamma_transform(const LFunctionSpec& spec, std::span<const cplx> z_set, double threshold) {
  require_half_plane(z_set, 0.0, "check_gamma_transform");
  IdentityReport rep;
  rep.identity_id = "gamma_transform";
  rep.threshold = threshold;
  for (std::size_t j = 0; j < spec.gamma.factors.size(); ++j) {
    const auto& f = spec.gamma.factors[j];
    for (const cplx z : z_set) {
      const auto v = gamma_term_transform(f.lambda, f.mu, z, 0.01 * threshold);
      rep.samples.push_back({"factor " + std::to_string(j), z, v.lhs, v.rhs, std::abs(v.lhs - v.rhs)});
    }
  }
  rep.budget.quadrature = 0.01 * threshold;
  rep.finalize();
  return rep;
}

FFStarReport check_ff_star(const LFunctionSpec& spec, const ZeroMultiset& zeros, std::span<const cplx> z_set,
                           double threshold, const LaplaceOptions& opts, std::span<const double> t_grid) {
  require_half_plane(z_set, 0.5 + opts.margin, "check_ff_star");
  const double B = spec.central_B();
  const LFunctionSpec star = dual(spec);
  const double B_star = star.central_B();
  const ZeroMultiset zeros_star = zeros.dual();

  FFStarReport out;
  auto& pw = out.pointwise;
  pw.identity_id = "ff_star_pointwise";
  pw.threshold = 1e-14;
  std::vector<double> grid(t_grid.begin(), t_grid.end());
  if (grid.empty())
    for (int k = 0; k <= 80; ++k) grid.push_back(0.25 * k);
  for (const double t : grid) {
    const cplx g = g_from_zeros(t, zeros, B).value;
    const cplx gs = g_from_zeros(t, zeros_star, B_star).value;
    pw.samples.push_back({"", t, gs, std::conj(g), std::abs(gs - std::conj(g)) / std::max(1.0, std::abs(g))});
  }
  pw.finalize();

  auto& lp = out.laplace;
  lp.identity_id = "ff_star_laplace";
  lp.threshold = threshold;
  lp.relative = true;
  std::vector<cplx> rhs;
  std::vector<double> rhs_err, eps;
  for (const cplx z : z_set) {
    const auto a = xi_log_derivative(spec, s_of(z), opts.rhs_tol, opts.eval);
    const auto b = xi_log_derivative(star, s_of(z), opts.rhs_tol, opts.eval);
    rhs.push_back((a.value + b.value) / (z * z));
    rhs_err.push_back((a.error + b.error) / std::norm(z));
    eps.push_back(0.5 * opts.quad_tol * (std::abs(rhs.back()) > 0.0 ? std::abs(rhs.back()) : 1.0));
  }
  const auto lap = g_laplace_panels(zeros, B, z_set, eps, true);
  for (std::size_t i = 0; i < z_set.size(); ++i) {
    const cplx corr = tail_correction(zeros.density(), z_set[i]);
    const cplx lhs = 2.0 * (lap.value[i] + corr);
    const double scale = std::abs(rhs[i]) > 0.0 ? std::abs(rhs[i]) : 1.0;
    lp.samples.push_back({"", z_set[i], lhs, rhs[i], relative_residual(lhs, rhs[i])});
    absorb(lp.budget, 2.0 * lap.error[i] / scale, 2.0 * lap.truncation[i] / scale, 2.0 * std::abs(corr) / scale,
           rhs_err[i] / scale);
  }
  lp.finalize();
  return out;
}

}  // namespace screw
