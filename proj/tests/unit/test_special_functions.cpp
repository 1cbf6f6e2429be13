#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "screw/errors.hpp"
#include "screw/special_functions.hpp"

using namespace screw;

namespace {

std::vector<cplx> random_right_half_plane(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.05, 30.0), im(-30.0, 30.0);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(re(rng), im(rng));
  return out;
}

}  // namespace

TEST(Digamma, KnownValues) {
  EXPECT_NEAR(std::abs(digamma(1.0) + euler_gamma), 0.0, 1e-15);
  EXPECT_NEAR(digamma(2.0).real(), 1.0 - euler_gamma, 1e-15);
  EXPECT_NEAR(digamma(0.5).real(), -euler_gamma - 2.0 * std::log(2.0), 1e-15);
  // psi(1 + i) = -gamma_0 + sum 1/(n(n^2+1)) real part; imaginary part from pi coth(pi)
  EXPECT_NEAR(digamma(cplx{1.0, 1.0}).imag(), 0.5 * (-1.0 + pi / std::tanh(pi)), 1e-14);
}

TEST(Digamma, MatchesSeriesAtHalf) {
  const cplx ref = oracle::digamma_series(0.5);
  EXPECT_NEAR(std::abs(digamma(0.5) - ref), 0.0, 1e-10);
}

TEST(Digamma, MatchesSeriesOffAxis) {
  for (const cplx w : {cplx{0.3, 2.0}, cplx{4.0, -1.5}, cplx{0.25, 0.0}}) {
    const cplx ref = oracle::digamma_series(w, 2000000);
    EXPECT_NEAR(std::abs(digamma(w) - ref), 0.0, 1e-9) << w;
  }
}

TEST(Digamma, RecurrenceOnRandomSamples) {
  for (const cplx w : random_right_half_plane(100, 1)) {
    const cplx r = digamma(w + 1.0) - digamma(w) - 1.0 / w;
    EXPECT_LE(std::abs(r), 1e-12) << w;
  }
}

TEST(Digamma, ConjugationSymmetry) {
  for (const cplx w : random_right_half_plane(100, 2)) EXPECT_LE(std::abs(digamma(std::conj(w)) - std::conj(digamma(w))), 1e-12);
}

TEST(Digamma, LeftHalfPlaneReflection) {
  // psi(1 - w) - psi(w) = pi cot(pi w)
  for (const cplx w : {cplx{-2.5, 0.3}, cplx{-0.4, 0.0}, cplx{-7.25, -1.0}}) {
    const cplx lhs = digamma(1.0 - w) - digamma(w);
    const cplx rhs = pi / std::tan(pi * w);
    EXPECT_LE(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(rhs))) << w;
  }
}

TEST(Digamma, PolesThrow) {
  EXPECT_THROW(digamma(0.0), pole_error);
  EXPECT_THROW(digamma(-3.0), pole_error);
  EXPECT_NO_THROW(digamma(cplx{-3.0, 1e-3}));
}

TEST(HurwitzZeta2, KnownValues) {
  EXPECT_NEAR(hurwitz_zeta2(1.0).real(), pi * pi / 6.0, 1e-14);
  EXPECT_NEAR(hurwitz_zeta2(2.0).real(), pi * pi / 6.0 - 1.0, 1e-14);
  EXPECT_NEAR(hurwitz_zeta2(0.5).real(), pi * pi / 2.0, 1e-13);
}

TEST(HurwitzZeta2, AgreesWithLerchAtOne) {
  const cplx a{1.0, 1.0};
  EXPECT_LE(std::abs(hurwitz_zeta2(a) - lerch_phi2({1.0, a})), 2e-16 * 10);
  const cplx ref = oracle::lerch2_series(1.0, a);
  EXPECT_LE(std::abs(hurwitz_zeta2(a) - ref), 1e-12);
}

TEST(HurwitzZeta2, RequiresRightHalfPlane) { EXPECT_THROW(hurwitz_zeta2(cplx{-0.5, 1.0}), precondition_error); }

TEST(LerchPhi2, SpecialValues) {
  EXPECT_NEAR(std::abs(lerch_phi2({1.0, 1.0}) - pi * pi / 6.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(lerch_phi2({1.0, 0.5}) - pi * pi / 2.0), 0.0, 1e-10);
  const cplx a{0.7, -0.4};
  EXPECT_NEAR(std::abs(lerch_phi2({1e-12, a}) - 1.0 / (a * a)), 0.0, 1e-11);
}

TEST(LerchPhi2, MatchesBruteForce) {
  for (const double z : {0.1, 0.5, 0.9, 0.999, 0.99995}) {
    for (const cplx a : {cplx{0.25}, cplx{1.0, 2.0}, cplx{3.5, -0.5}}) {
      const cplx ref = oracle::lerch2_series(z, a, 4000000);
      EXPECT_LE(std::abs(lerch_phi2({z, a}) - ref), 1e-12) << z << " " << a;
    }
  }
}

TEST(LerchPhi2, ShiftRecurrence) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> zd(0.01, 1.0), re(0.05, 10.0), im(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double z = zd(rng);
    const cplx a{re(rng), im(rng)};
    const cplx r = lerch_phi2({z, a}) - (1.0 / (a * a) + z * lerch_phi2({z, a + 1.0}));
    EXPECT_LE(std::abs(r), 1e-12) << z << " " << a;
  }
}

TEST(LerchPhi2, ConjugationSymmetry) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> zd(0.01, 1.0), re(0.05, 10.0), im(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double z = zd(rng);
    const cplx a{re(rng), im(rng)};
    EXPECT_LE(std::abs(lerch_phi2({z, std::conj(a)}) - std::conj(lerch_phi2({z, a}))), 1e-12);
  }
}

TEST(LerchPhi2, ParameterValidation) {
  EXPECT_THROW(lerch_phi2({0.0, 1.0}), precondition_error);
  EXPECT_THROW(lerch_phi2({1.5, 1.0}), precondition_error);
  EXPECT_THROW(lerch_phi2({0.5, cplx{0.0, 1.0}}), precondition_error);
}

TEST(LerchBracket, DefinitionAcrossRegimes) {
  // B(x, a) = Phi(1,2,a) - e^{-xa} Phi(e^{-x},2,a), checked against brute-force sums
  for (const double x : {1e-3, 0.02, 0.2, 0.49, 0.51, 1.0, 5.0, 40.0}) {
    for (const cplx a : {cplx{0.25}, cplx{0.75}, cplx{1.0, 0.5}}) {
      const cplx ref = oracle::lerch2_series(1.0, a, 4000000) - std::exp(-x * a) * oracle::lerch2_series(std::exp(-x), a, 4000000);
      EXPECT_LE(std::abs(lerch_bracket(x, a) - ref), 1e-11) << x << " " << a;
    }
  }
}

TEST(LerchBracket, SmallArgumentAsymptotics) {
  // B(x, a) = x (1 - log x - gamma_0 - psi(a)) + O(x^2)
  const cplx a{0.25};
  const double x = 1e-7;
  const cplx lead = x * (1.0 - std::log(x) - euler_gamma - digamma(a));
  EXPECT_LE(std::abs(lerch_bracket(x, a) - lead), 1e-12);
  EXPECT_EQ(lerch_bracket(0.0, a), cplx{0.0});
}

TEST(LerchBracket, ContinuousAcrossSwitch) {
  const cplx a{0.25, 0.1};
  // dB/dx = sum e^{-x(n+a)} / (n+a)
  std::complex<long double> slope = 0.0L;
  for (int n = 0; n < 200; ++n) {
    const std::complex<long double> w(0.25L + n, 0.1L);
    slope += std::exp(-0.5L * w) / w;
  }
  const double h = 1e-9;
  const cplx below = lerch_bracket(0.5 - h, a), above = lerch_bracket(0.5 + h, a);
  const cplx expected{static_cast<double>(slope.real()) * 2 * h, static_cast<double>(slope.imag()) * 2 * h};
  EXPECT_LE(std::abs(above - below - expected), 1e-14);
}

TEST(Bernoulli, Numbers) {
  EXPECT_DOUBLE_EQ(bernoulli_number(0), 1.0);
  EXPECT_DOUBLE_EQ(bernoulli_number(1), -0.5);
  EXPECT_NEAR(bernoulli_number(2), 1.0 / 6.0, 1e-16);
  EXPECT_NEAR(bernoulli_number(12), -691.0 / 2730.0, 1e-15);
  EXPECT_EQ(bernoulli_number(7), 0.0);
}
