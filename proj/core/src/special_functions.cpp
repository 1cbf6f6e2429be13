#include "screw/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "screw/errors.hpp"

namespace screw {
namespace {

constexpr int kMaxBernoulli = 120;

// beta_j = B_j / j!.  For even j >= 2, B_j / j! = (-1)^(j/2+1) 2 zeta(j) / (2 pi)^j.
struct BernoulliTables {
  std::array<long double, kMaxBernoulli + 1> scaled{};
  std::array<long double, kMaxBernoulli + 1> plain{};

  BernoulliTables() {
    scaled[0] = plain[0] = 1.0L;
    scaled[1] = plain[1] = -0.5L;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double inv_pow = 1.0L;  // (2 pi)^-j
    long double factorial = 1.0L;
    for (int j = 1; j <= kMaxBernoulli; ++j) {
      inv_pow /= two_pi;
      factorial *= j;
      if (j < 2 || j % 2 == 1) continue;
      // zeta(j) by Euler-Maclaurin with cutoff 64.
      const long double cut = 64.0L;
      long double zeta = 0.0L;
      for (int n = 63; n >= 1; --n) zeta += std::pow(static_cast<long double>(n), -j);
      zeta += std::pow(cut, 1 - j) / (j - 1) + 0.5L * std::pow(cut, -j) +
              j / 12.0L * std::pow(cut, -j - 1) -
              j * (j + 1.0L) * (j + 2.0L) / 720.0L * std::pow(cut, -j - 3) +
              j * (j + 1.0L) * (j + 2.0L) * (j + 3.0L) * (j + 4.0L) / 30240.0L *
                  std::pow(cut, -j - 5);
      const long double sign = (j / 2) % 2 == 1 ? 1.0L : -1.0L;
      scaled[j] = sign * 2.0L * zeta * inv_pow;
      plain[j] = scaled[j] * factorial;
    }
  }
};

const BernoulliTables& tables() {
  static const BernoulliTables t;
  return t;
}

bool is_nonpositive_integer(cplx w) {
  return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real());
}

bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

cplx_ld to_ld(cplx w) { return {w.real(), w.imag()}; }
cplx to_d(cplx_ld w) { return {static_cast<double>(w.real()), static_cast<double>(w.imag())}; }

void require_right_half_plane(cplx a, const char* who) {
  if (!finite(a) || !(a.real() > 0.0))
    throw precondition_error(std::string(who) + ": requires Re(a) > 0");
}

}  // namespace

double bernoulli_number(int k) {
  if (k < 0 || k > kMaxBernoulli) throw precondition_error("bernoulli_number: index out of range");
  return static_cast<double>(tables().plain[k]);
}

void LerchParams::validate() const {
  if (!(z > 0.0 && z <= 1.0)) throw precondition_error("lerch_phi2: requires 0 < z <= 1");
  require_right_half_plane(a, "lerch_phi2");
}

cplx digamma(cplx w, double tol) {
  if (!finite(w)) throw domain_error("digamma: non-finite argument");
  if (is_nonpositive_integer(w)) throw pole_error("digamma: pole at nonpositive integer");

  if (w.real() < 0.0) {
    // psi(w) = psi(1 - w) - pi cot(pi w); cot has period 1 so reduce first.
    const cplx r = w - std::round(w.real());
    const cplx cot = 1.0 / std::tan(pi * r);
    return digamma(1.0 - w, tol) - pi * cot;
  }

  cplx_ld x = to_ld(w);
  cplx_ld acc = 0.0L;
  while (x.real() < 16.0L) {
    acc -= 1.0L / x;
    x += 1.0L;
  }
  const auto& b = tables().plain;
  const cplx_ld inv2 = 1.0L / (x * x);
  cplx_ld power = inv2;
  cplx_ld series = std::log(x) - 0.5L / x;
  for (int k = 1; 2 * k <= kMaxBernoulli; ++k) {
    const cplx_ld term = b[2 * k] / (2.0L * k) * power;
    series -= term;
    if (std::abs(term) < 0.01L * tol) break;
    power *= inv2;
  }
  return to_d(acc + series);
}

cplx hurwitz_zeta2(cplx a, double tol) {
  require_right_half_plane(a, "hurwitz_zeta2");
  const int shift = a.real() < 16.0 ? static_cast<int>(std::ceil(16.0 - a.real())) : 0;
  const cplx_ld al = to_ld(a);
  cplx_ld head = 0.0L;
  for (int n = shift - 1; n >= 0; --n) {
    const cplx_ld w = al + static_cast<long double>(n);
    head += 1.0L / (w * w);
  }
  const cplx_ld w = al + static_cast<long double>(shift);
  const cplx_ld inv = 1.0L / w;
  const cplx_ld inv2 = inv * inv;
  cplx_ld tail = inv + 0.5L * inv2;
  cplx_ld power = inv2 * inv;
  const auto& b = tables().plain;
  for (int k = 1; 2 * k <= kMaxBernoulli; ++k) {
    const cplx_ld term = b[2 * k] * power;
    tail += term;
    if (std::abs(term) < 0.01L * tol) break;
    power *= inv2;
  }
  return to_d(head + tail);
}

cplx lerch_bracket(double x, cplx a, double tol) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw precondition_error("lerch_bracket: requires x >= 0");
  require_right_half_plane(a, "lerch_bracket");
  if (x == 0.0) return 0.0;

  if (x < 0.5 && std::abs(a) * x < 2.0) {
    const auto& beta = tables().scaled;
    const cplx_ld al = to_ld(a);
    // a^m / m!
    std::array<cplx_ld, kMaxBernoulli + 1> apow{};
    apow[0] = 1.0L;
    for (int m = 1; m <= kMaxBernoulli; ++m) apow[m] = apow[m - 1] * al / static_cast<long double>(m);

    const long double xl = x;
    cplx_ld sum = xl * (1.0L - std::log(xl) - static_cast<long double>(euler_gamma)) -
                  xl * to_ld(digamma(a, 0.01 * tol));
    long double xpow = xl;  // x^(k+1)
    int small_terms = 0;
    for (int k = 1; k <= kMaxBernoulli; ++k) {
      xpow *= xl;
      cplx_ld bk = 0.0L;  // B_k(a) / k!
      for (int j = 0; j <= k; ++j) bk += beta[j] * apow[k - j];
      const long double sign = k % 2 == 0 ? 1.0L : -1.0L;
      const cplx_ld term = sign * bk * xpow / static_cast<long double>(k * (k + 1));
      sum -= term;
      small_terms = std::abs(term) < 0.01L * tol ? small_terms + 1 : 0;
      if (small_terms >= 2) return to_d(sum);
    }
    throw convergence_error("lerch_bracket: small-x expansion did not converge");
  }

  // Direct: zeta(2, a) - sum_n e^{-x (n + a)} / (n + a)^2.
  const cplx_ld al = to_ld(a);
  const long double q = std::exp(-static_cast<long double>(x));
  const cplx_ld lead = std::exp(-static_cast<long double>(x) * al);
  long double qn = 1.0L;
  cplx_ld direct = 0.0L;
  const long double geometric = 1.0L / -std::expm1(-static_cast<long double>(x));
  for (long n = 0; n < 400'000'000L; ++n) {
    const cplx_ld w = al + static_cast<long double>(n);
    direct += qn / (w * w);
    qn *= q;
    const long double next = static_cast<long double>(n + 1) + al.real();
    const long double bound = std::abs(lead) * qn * geometric / (next * next);
    if (bound <= tol) return hurwitz_zeta2(a, tol) - to_d(lead * direct);
  }
  throw convergence_error("lerch_bracket: direct series exceeded iteration cap");
}

cplx lerch_phi2(const LerchParams& p, double tol) {
  p.validate();
  if (p.z == 1.0) return hurwitz_zeta2(p.a, tol);

  const double x = -std::log1p(p.z - 1.0);
  if (1.0 - p.z < 1e-3 && std::abs(p.a) * x < 2.0) {
    // Phi(e^{-x}, 2, a) = e^{x a} (zeta(2, a) - B(x, a))
    return std::exp(x * p.a) * (hurwitz_zeta2(p.a, tol) - lerch_bracket(x, p.a, tol));
  }

  const cplx_ld al = to_ld(p.a);
  const long double z = p.z;
  long double zn = 1.0L;
  cplx_ld sum = 0.0L;
  for (long n = 0; n < 400'000'000L; ++n) {
    const cplx_ld w = al + static_cast<long double>(n);
    sum += zn / (w * w);
    zn *= z;
    // Tail after term n: z^(n+1) * sum_{m>n} |m+a|^-2 <= z^(n+1) / (n + Re a).
    const long double bound = zn / (static_cast<long double>(n) + al.real());
    if (bound <= tol) return to_d(sum);
  }
  throw convergence_error("lerch_phi2: series exceeded iteration cap");
}

}  // namespace screw
