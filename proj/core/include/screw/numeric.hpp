#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace screw {

using cplx = std::complex<double>;
using cplx_ld = std::complex<long double>;

inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double pi = std::numbers::pi;

/// Value together with an absolute error estimate.  `heuristic` marks
/// estimates that rest on a model rather than a proven bound.
struct Estimate {
  cplx value{};
  double error = 0.0;
  bool heuristic = false;
};

/// Neumaier-compensated accumulator.  Works for real and complex scalars.
template <class T>
class compensated_sum {
 public:
  compensated_sum() = default;
  explicit compensated_sum(T init) : sum_(init) {}

  compensated_sum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    } else {
      using R = typename T::value_type;
      compensated_sum<R> re{sum_.real()}, im{sum_.imag()};
      re.comp_ = comp_.real();
      im.comp_ = comp_.imag();
      re += x.real();
      im += x.imag();
      sum_ = T(re.sum_, im.sum_);
      comp_ = T(re.comp_, im.comp_);
    }
  }

  template <class>
  friend class compensated_sum;

  T sum_{};
  T comp_{};
};

/// e^w - 1 without cancellation for small |w|.
inline cplx expm1(cplx w) {
  const double x = w.real(), y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace screw
