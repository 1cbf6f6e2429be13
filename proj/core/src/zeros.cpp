#include "screw/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "screw/errors.hpp"

namespace screw {
namespace {

constexpr double kMergeTolerance = 1e-9;
constexpr double kRealTolerance = 1e-9;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw parse_error("zeros: cannot parse number '" + tok + "'", line);
  }
  if (used != tok.size() || !std::isfinite(v)) throw parse_error("zeros: cannot parse number '" + tok + "'", line);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// ZeroDensity

double ZeroDensity::density(double u) const {
  return active ? degree / pi * (log_q + std::log(u)) : 0.0;
}

double ZeroDensity::count(double u) const {
  return active ? degree * u / pi * (log_q + std::log(u) - 1.0) + offset : 0.0;
}

double ZeroDensity::inverse_square_tail() const {
  if (!active || height <= 0.0) return 0.0;
  return degree / pi * (log_q + std::log(height) + 1.0) / height;
}

double ZeroDensity::inverse_quartic_tail() const {
  if (!active || height <= 0.0) return 0.0;
  return degree / pi * ((log_q + std::log(height)) / 3.0 + 1.0 / 9.0) / (height * height * height);
}

double ZeroDensity::inverse_cube_tail() const {
  if (!active || height <= 0.0) return 0.0;
  return degree / pi * (0.5 * (log_q + std::log(height)) + 0.25) / (height * height);
}

// ---------------------------------------------------------------------------
// ZeroMultiset

ZeroMultiset::ZeroMultiset(std::vector<Zero> zeros, unsigned m0, bool mirrored, std::string source, TailModel tail,
                           double degree, double height_cutoff)
    : m0_(m0), mirrored_(mirrored), source_(std::move(source)), tail_(tail), degree_(degree) {
  if (!(degree > 0.0)) throw precondition_error("ZeroMultiset: degree must be positive");
  std::vector<Zero> kept;
  kept.reserve(zeros.size());
  for (auto z : zeros) {
    if (z.mult == 0) continue;
    if (!std::isfinite(z.gamma.real()) || !std::isfinite(z.gamma.imag()))
      throw precondition_error("ZeroMultiset: non-finite zero");
    if (std::abs(z.gamma) <= 1e-12) {
      m0_ += z.mult;
      continue;
    }
    if (mirrored) {
      if (std::abs(z.gamma.imag()) > kRealTolerance || z.gamma.real() <= 0.0)
        throw precondition_error("ZeroMultiset: mirrored sets hold positive real zeros only");
      z.gamma = z.gamma.real();
    }
    kept.push_back(z);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Zero& a, const Zero& b) { return std::abs(a.gamma) < std::abs(b.gamma); });
  for (const auto& z : kept) {
    bool merged = false;
    for (auto it = zeros_.rbegin(); it != zeros_.rend(); ++it) {
      if (std::abs(it->gamma) < std::abs(z.gamma) - kMergeTolerance) break;
      if (std::abs(it->gamma - z.gamma) <= kMergeTolerance) {
        it->mult += z.mult;
        merged = true;
        break;
      }
    }
    if (!merged) zeros_.push_back(z);
  }

  const double max_abs = zeros_.empty() ? 0.0 : std::abs(zeros_.back().gamma);
  height_ = height_cutoff < 0.0 ? max_abs : height_cutoff;
  if (height_ < max_abs - kMergeTolerance || height_ > max_abs + 1.0)
    throw precondition_error("ZeroMultiset: height cutoff must lie in [max|gamma|, max|gamma| + 1]");
  fit_density();
}

void ZeroMultiset::fit_density() {
  density_ = ZeroDensity{};
  density_.degree = degree_;
  density_.height = height_;
  if (tail_ == TailModel::none || zeros_.empty()) return;

  // Least squares for N(u) - (d u/pi)(log u - 1) = (d u/pi) log q + offset at the
  // midpoints of the counting-function jumps.
  double cum = m0_;
  double sxx = 0, sx = 0, sy = 0, sxy = 0;
  const double w = mirrored_ ? 2.0 : 1.0;
  std::size_t n = 0;
  for (const auto& z : zeros_) {
    const double u = std::abs(z.gamma);
    const double jump = w * z.mult;
    const double count = cum + 0.5 * jump;
    cum += jump;
    const double x = degree_ * u / pi;
    const double y = count - x * (std::log(u) - 1.0);
    sxx += x * x;
    sx += x;
    sy += y;
    sxy += x * y;
    ++n;
  }
  const double nn = static_cast<double>(n);
  const double det = nn * sxx - sx * sx;
  if (n >= 20 && det > 0.0) {
    density_.log_q = (nn * sxy - sx * sy) / det;
    density_.offset = (sy - density_.log_q * sx) / nn;
  } else {
    density_.log_q = sxy / sxx;
    density_.offset = 0.0;
  }
  density_.active = true;
}

std::size_t ZeroMultiset::total_count() const noexcept {
  std::size_t n = m0_;
  for (const auto& z : zeros_) n += (mirrored_ ? 2u : 1u) * z.mult;
  return n;
}

bool ZeroMultiset::all_real(double tol) const noexcept {
  return std::all_of(zeros_.begin(), zeros_.end(), [tol](const Zero& z) { return std::abs(z.gamma.imag()) <= tol; });
}

double ZeroMultiset::max_imag() const noexcept {
  double m = 0.0;
  for (const auto& z : zeros_) m = std::max(m, z.gamma.imag());
  return m;
}

ZeroMultiset ZeroMultiset::first(std::size_t count) const {
  count = std::min(count, zeros_.size());
  std::vector<Zero> head(zeros_.begin(), zeros_.begin() + static_cast<std::ptrdiff_t>(count));
  return {std::move(head), m0_, mirrored_, source_ + "[:" + std::to_string(count) + "]", tail_, degree_};
}

ZeroMultiset ZeroMultiset::dual() const {
  std::vector<Zero> flipped;
  flipped.reserve(zeros_.size());
  for (const auto& z : zeros_) flipped.push_back({mirrored_ ? z.gamma : -std::conj(z.gamma), z.mult});
  return {std::move(flipped), m0_, mirrored_, source_ + "*", tail_, degree_, height_};
}

ZeroMultiset ZeroMultiset::with_degree(double degree) const {
  ZeroMultiset out = *this;
  if (!(degree > 0.0)) throw precondition_error("ZeroMultiset: degree must be positive");
  out.degree_ = degree;
  out.fit_density();
  return out;
}

// ---------------------------------------------------------------------------
// Ingestion

ZeroMultiset parse_zeros(std::istream& in, ZeroFormat format, bool mirrored, std::string source, double degree) {
  std::vector<Zero> zeros;
  unsigned m0 = 0;
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (format == ZeroFormat::plain_imag) {
      std::istringstream fields(line);
      std::string tok;
      while (fields >> tok) {
        const double g = parse_double(tok, lineno);
        if (!(g > 0.0)) throw parse_error("zeros: plain-imag values must be positive", lineno);
        zeros.push_back({g, 1});
        any = true;
      }
      continue;
    }
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(trim(part));
    if (parts.size() < 2 || parts.size() > 3) throw parse_error("zeros: expected 're,im,mult'", lineno);
    const double re = parse_double(parts[0], lineno);
    const double im = parse_double(parts[1], lineno);
    unsigned mult = 1;
    if (parts.size() == 3) {
      const double m = parse_double(parts[2], lineno);
      if (!(m >= 1.0) || m != std::floor(m) || m > 1e9) throw parse_error("zeros: multiplicity must be a positive integer", lineno);
      mult = static_cast<unsigned>(m);
    }
    any = true;
    const cplx g{re, im};
    if (std::abs(g) <= 1e-12) {
      m0 += mult;
      continue;
    }
    if (mirrored && (std::abs(im) > kRealTolerance || re <= 0.0))
      throw parse_error("zeros: mirrored csv input must hold positive real zeros", lineno);
    zeros.push_back({g, mult});
  }
  if (!any) throw parse_error("zeros: input holds no zeros");
  return {std::move(zeros), m0, mirrored, std::move(source), TailModel::riemann_von_mangoldt, degree};
}

ZeroMultiset ingest_zeros(const std::filesystem::path& path, ZeroFormat format, bool mirrored, double degree) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open zero file " + path.string());
  return parse_zeros(in, format, mirrored, path.filename().string(), degree);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Omitted zeros add sum_{|gamma| > T} (1 - cos gamma t)/gamma^2: the mean part, a coherent
// remainder of the cosine sum and a fluctuation of the size of its random-phase spread.
// Near t = log n the sum also misses the corner of slope jump |c(n)|/sqrt(n), worth about
// jump/(pi T); |c(n)| <= d log n is assumed and n is taken within e^{|t| +- 1}.
double corner_at(double degree, double T, double a) {
  const double lo = std::max(std::log(2.0), a - 1.0), hi = a + 1.0;
  if (hi < lo) return 0.0;
  // x e^{-x/2} peaks at x = 2
  const double x = (lo <= 2.0 && 2.0 <= hi) ? 2.0 : (hi < 2.0 ? hi : lo);
  return degree * x * std::exp(-0.5 * x) / (pi * T);
}

double tail_at(const ZeroMultiset& zs, double t) {
  const auto& d = zs.density();
  if (!d.active || t == 0.0 || d.height <= 0.0) return 0.0;
  const double T = d.height;
  const double a = std::abs(t);
  const double coherent = 2.0 * d.density(T) / (T * T * std::max(a, 1.0 / T));
  const double spread = 6.0 * std::sqrt(d.inverse_quartic_tail());
  return std::min(1.0, 0.5 * a * T) * (d.inverse_square_tail() + coherent + spread) + corner_at(d.degree, T, a);
}

}  // namespace

ScrewValue g_from_zeros(double t, const ZeroMultiset& zs, double B) {
  if (!std::isfinite(t)) throw precondition_error("g_from_zeros: t must be finite");
  if (t < 0.0) {
    ScrewValue r = g_from_zeros(-t, zs, B);
    r.t = t;
    r.value = std::conj(r.value);
    return r;
  }
  const double m0 = zs.m0();
  compensated_sum<cplx> acc(cplx{-0.5 * m0 * t * t, -B * t});
  const bool mirrored = zs.mirrored();
  for (const auto& z : zs.zeros()) {
    const double m = z.mult;
    if (z.gamma.imag() == 0.0) {
      const double g = z.gamma.real();
      const double s = std::sin(0.5 * g * t);
      if (mirrored) {
        const double mag = 4.0 * m * s * s / (g * g);
        acc += cplx{-mag, 0.0};
      } else {
        const double mag = 2.0 * m * s * s / (g * g);
        acc += cplx{-mag, -m * std::sin(g * t) / (g * g)};
      }
    } else {
      const cplx g = z.gamma;
      acc += m * screw::expm1(cplx{0.0, -1.0} * g * t) / (g * g);
    }
  }
  const bool heur = zs.density().active;
  return {t, acc.value(), tail_at(zs, t), heur ? TailProvenance::heuristic : TailProvenance::none};
}

RealScrewValue re_neg_g(double t, const ZeroMultiset& zs) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw precondition_error("re_neg_g: requires t >= 0");
  if (!zs.all_real(kRealTolerance)) throw precondition_error("re_neg_g: zero set has non-real zeros");
  const double m0 = zs.m0();
  compensated_sum<double> acc(0.5 * m0 * t * t);
  const double w = zs.mirrored() ? 4.0 : 2.0;
  for (const auto& z : zs.zeros()) {
    const double m = z.mult;
    const double g = z.gamma.real();
    const double s = std::sin(0.5 * g * t);
    acc += w * m * s * s / (g * g);
  }
  const bool heur = zs.density().active;
  return {t, acc.value(), tail_at(zs, t), heur ? TailProvenance::heuristic : TailProvenance::none};
}

ScrewMeasure screw_measure_constants(const ZeroMultiset& zs, double B) {
  ScrewMeasure out;
  compensated_sum<cplx> c(cplx{B, 0.0});
  compensated_sum<double> mass;
  const double w = zs.mirrored() ? 2.0 : 1.0;
  for (const auto& z : zs.zeros()) {
    const double m = z.mult;
    // gamma and -gamma cancel exactly in mirrored sets
    if (!zs.mirrored()) c += m / (z.gamma * (1.0 + z.gamma * z.gamma));
    mass += w * m / (1.0 + std::norm(z.gamma));
  }
  out.C_F = c.value();
  out.tau_mass = mass.value() + zs.m0();
  out.tau_tail = zs.density().inverse_square_tail();
  out.C_tail = zs.mirrored() ? 0.0 : zs.density().inverse_cube_tail();
  return out;
}

std::vector<cplx> g_on_panels(const ZeroMultiset& zs, double B, double start, double h, std::size_t panels,
                              std::span<const double> offsets) {
  const std::size_t J = offsets.size();
  const std::size_t M = panels * J;
  std::vector<double> re(M), im(M);
  const double m0 = zs.m0();
  for (std::size_t k = 0; k < panels; ++k)
    for (std::size_t j = 0; j < J; ++j) {
      const double t = start + h * (static_cast<double>(k) + offsets[j]);
      re[k * J + j] = -0.5 * m0 * t * t;
      im[k * J + j] = -B * t;
    }

  // Phases are recomputed exactly at the start of each block to bound drift.
  constexpr std::size_t kBlock = 128;
  std::vector<double> c_prev(J), c_cur(J), s_prev(J), s_cur(J);
  std::vector<cplx> phase(J);
  const bool mirrored = zs.mirrored();

  for (const auto& z : zs.zeros()) {
    const double m = z.mult;
    if (z.gamma.imag() == 0.0) {
      const double g = z.gamma.real();
      const double a = (mirrored ? 2.0 : 1.0) * m / (g * g);
      const double two_cos = 2.0 * std::cos(g * h);
      for (std::size_t k0 = 0; k0 < panels; k0 += kBlock) {
        const std::size_t k1 = std::min(panels, k0 + kBlock);
        for (std::size_t j = 0; j < J; ++j) {
          const double t0 = start + h * (static_cast<double>(k0) + offsets[j]);
          c_cur[j] = std::cos(g * t0);
          c_prev[j] = std::cos(g * (t0 - h));
          if (!mirrored) {
            s_cur[j] = std::sin(g * t0);
            s_prev[j] = std::sin(g * (t0 - h));
          }
        }
        for (std::size_t k = k0; k < k1; ++k) {
          double* rrow = re.data() + k * J;
          for (std::size_t j = 0; j < J; ++j) {
            rrow[j] += a * (c_cur[j] - 1.0);
            const double next = two_cos * c_cur[j] - c_prev[j];
            c_prev[j] = c_cur[j];
            c_cur[j] = next;
          }
          if (!mirrored) {
            double* irow = im.data() + k * J;
            for (std::size_t j = 0; j < J; ++j) {
              irow[j] -= a * s_cur[j];
              const double next = two_cos * s_cur[j] - s_prev[j];
              s_prev[j] = s_cur[j];
              s_cur[j] = next;
            }
          }
        }
      }
    } else {
      const cplx g = z.gamma;
      const cplx coef = m / (g * g);
      const cplx step = std::exp(cplx{0.0, -1.0} * g * h);
      for (std::size_t k0 = 0; k0 < panels; k0 += kBlock) {
        const std::size_t k1 = std::min(panels, k0 + kBlock);
        for (std::size_t j = 0; j < J; ++j)
          phase[j] = std::exp(cplx{0.0, -1.0} * g * (start + h * (static_cast<double>(k0) + offsets[j])));
        for (std::size_t k = k0; k < k1; ++k)
          for (std::size_t j = 0; j < J; ++j) {
            const cplx v = coef * (phase[j] - 1.0);
            re[k * J + j] += v.real();
            im[k * J + j] += v.imag();
            phase[j] *= step;
          }
      }
    }
  }

  std::vector<cplx> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = {re[i], im[i]};
  return out;
}

}  // namespace screw
