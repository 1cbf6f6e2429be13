#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "screw/coefficients.hpp"
#include "screw/errors.hpp"

using namespace screw;

TEST(VonMangoldt, SmallTable) {
  const auto t = sieve_von_mangoldt(10);
  EXPECT_EQ(t.cutoff(), 10u);
  EXPECT_DOUBLE_EQ(t.value(8).real(), std::log(2.0));
  EXPECT_EQ(t.value(6), cplx{0.0});
  EXPECT_DOUBLE_EQ(t.value(9).real(), std::log(3.0));
  EXPECT_DOUBLE_EQ(t.value(7).real(), std::log(7.0));
  EXPECT_EQ(t.entries().front().n, 2u);
  EXPECT_THROW(t.value(1), precondition_error);
  EXPECT_THROW(t.value(11), precondition_error);
}

TEST(VonMangoldt, MatchesSmallestPrimeFactorOracle) {
  constexpr std::uint32_t N = 100000;
  const auto spf = oracle::spf_table(N);
  const auto t = sieve_von_mangoldt(N);
  for (std::uint32_t n = 2; n <= N; ++n) ASSERT_EQ(t.value(n).real(), oracle::von_mangoldt(n, spf)) << n;
}

TEST(VonMangoldt, DivisorSumIsLog) {
  constexpr std::uint64_t N = 200000;
  const auto t = sieve_von_mangoldt(N);
  std::vector<long double> acc(N + 1, 0.0L);
  for (const auto& e : t.entries())
    for (std::uint64_t m = e.n; m <= N; m += e.n) acc[m] += e.value.real();
  double worst = 0.0;
  for (std::uint64_t n = 2; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    worst = std::max(worst, std::abs(static_cast<double>(acc[n]) - ln) / ln);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(VonMangoldt, OnlyPrimePowers) {
  const auto t = sieve_von_mangoldt(5000);
  const auto spf = oracle::spf_table(5000);
  for (const auto& e : t.entries()) {
    std::uint64_t m = e.n;
    const std::uint64_t p = spf[m];
    while (m % p == 0) m /= p;
    EXPECT_EQ(m, 1u) << e.n;
  }
}

TEST(VonMangoldt, Budget) {
  try {
    sieve_von_mangoldt(1000, 999);
    FAIL();
  } catch (const budget_error& e) {
    EXPECT_EQ(e.max_admissible(), 999.0);
  }
  EXPECT_THROW(sieve_von_mangoldt(1), precondition_error);
}

TEST(Kronecker, MatchesEulerCriterion) {
  const auto spf = oracle::spf_table(2000);
  for (const std::int64_t d : {-4, -3, 5, 8, -8, 12, -7, 13}) {
    for (std::uint64_t p = 2; p < 2000; ++p) {
      if (spf[p] != p) continue;
      EXPECT_EQ(kronecker_symbol(d, p), oracle::kronecker_prime(d, p)) << d << " " << p;
    }
  }
}

TEST(Kronecker, Multiplicative) {
  for (const std::int64_t d : {-4, 5, -23}) {
    for (std::uint64_t a = 1; a < 60; ++a)
      for (std::uint64_t b = 1; b < 60; ++b)
        EXPECT_EQ(kronecker_symbol(d, a * b), kronecker_symbol(d, a) * kronecker_symbol(d, b));
  }
}

TEST(Kronecker, FundamentalDiscriminants) {
  for (const std::int64_t d : {-3, -4, 5, -7, 8, -8, 12, 13, -15, -20, 24}) EXPECT_TRUE(is_fundamental_discriminant(d)) << d;
  for (const std::int64_t d : {0, 1, -1, 2, 4, 9, -12, 16, 18, 20, -16}) EXPECT_FALSE(is_fundamental_discriminant(d)) << d;
}

TEST(QuadraticCharacter, MinusFour) {
  const auto t = quadratic_character_coeffs(-4, 30);
  // chi(9) = chi(3)^2 = 1
  EXPECT_DOUBLE_EQ(t.value(9).real(), std::log(3.0));
  EXPECT_DOUBLE_EQ(t.value(3).real(), -std::log(3.0));
  EXPECT_EQ(t.value(4), cplx{0.0});
  EXPECT_DOUBLE_EQ(t.value(5).real(), std::log(5.0));
  EXPECT_DOUBLE_EQ(t.value(25).real(), std::log(5.0));
  EXPECT_DOUBLE_EQ(t.value(27).real(), -std::log(3.0));
  EXPECT_THROW(quadratic_character_coeffs(-12, 30), precondition_error);
}

TEST(QuadraticCharacter, MatchesOracle) {
  constexpr std::uint32_t N = 20000;
  const auto spf = oracle::spf_table(N);
  for (const std::int64_t d : {-3, 5, -8, 12}) {
    const auto t = quadratic_character_coeffs(d, N);
    for (std::uint32_t n = 2; n <= N; ++n) {
      const double lam = oracle::von_mangoldt(n, spf);
      int chi = 0;
      if (lam != 0.0) {
        std::uint32_t m = n, k = 0;
        while (m % spf[n] == 0) m /= spf[n], ++k;
        chi = oracle::kronecker_prime(d, spf[n]);
        if (k % 2 == 0 && chi != 0) chi = 1;
      }
      ASSERT_EQ(t.value(n).real(), chi * lam) << d << " " << n;
    }
  }
}

TEST(WeightedPrimeSum, PrefixSumsAgreeWithDirectSum) {
  const auto t = sieve_von_mangoldt(5000);
  for (const double x : {0.5, 0.7, 1.0, 2.3, 5.0, 8.5}) {
    long double direct = 0.0L;
    for (const auto& e : t.entries())
      if (e.log_n <= x) direct += e.value.real() * (x - e.log_n) / std::sqrt(static_cast<long double>(e.n));
    EXPECT_NEAR(t.weighted_prime_sum(x).real(), static_cast<double>(direct), 1e-12 * std::max(1.0L, direct)) << x;
  }
  EXPECT_EQ(t.weighted_prime_sum(0.0), cplx{0.0});
  EXPECT_NEAR(std::abs(t.weighted_prime_sum(std::log(2.0))), 0.0, 1e-20);
  EXPECT_THROW(t.weighted_prime_sum(9.0), budget_error);
}

TEST(CoefficientTable, RejectsBadEntries) {
  EXPECT_THROW(CoefficientTable(10, {{1, 1.0}}), precondition_error);
  EXPECT_THROW(CoefficientTable(10, {{11, 1.0}}), precondition_error);
  EXPECT_THROW(CoefficientTable(10, {{3, 1.0}, {3, 2.0}}), precondition_error);
  const CoefficientTable t(10, {{5, cplx{0.0}}, {3, cplx{1.0, 2.0}}});
  EXPECT_EQ(t.entries().size(), 1u);
  EXPECT_EQ(t.value(3), (cplx{1.0, 2.0}));
}

TEST(CoefficientFile, RoundTrip) {
  const CoefficientTable t(12, {{2, cplx{0.5, -0.25}}, {7, cplx{1.0 / 3.0, 0.1}}, {12, cplx{-2.0, 0.0}}});
  std::stringstream ss;
  write_coefficient_file(ss, t);
  const auto back = read_coefficient_file(ss);
  ASSERT_EQ(back.entries().size(), 3u);
  EXPECT_EQ(back.cutoff(), 12u);
  for (const std::uint64_t n : {2, 7, 12}) EXPECT_EQ(back.value(n), t.value(n));
}

TEST(CoefficientFile, ParseErrorsCarryLine) {
  std::istringstream in("# header\n2 1 0\n3 abc 0\n");
  try {
    read_coefficient_file(in);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Provider, LazyTableGrowsAndIsShared) {
  auto p = CoefficientProvider::zeta();
  const auto a = p.table(100);
  const auto b = p.table(50);
  EXPECT_GE(b->cutoff(), 100u);
  EXPECT_EQ(a.get(), b.get());
  const auto copy = p;
  EXPECT_EQ(copy.table(10).get(), a.get());
}

TEST(Provider, Transforms) {
  auto p = CoefficientProvider::values({{2, cplx{0.0, std::log(2.0)}}, {3, cplx{1.0, 1.0}}});
  EXPECT_FALSE(p.real_valued());
  const auto c = p.conjugated().table(3)->value(3);
  EXPECT_EQ(c, (cplx{1.0, -1.0}));
  EXPECT_EQ(p.twice_real().table(3)->value(2), cplx{0.0});
  EXPECT_EQ(p.twice_real().table(3)->value(3), cplx{2.0});
  EXPECT_EQ(p.max_cutoff(), 3u);
  EXPECT_THROW(p.table(4), budget_error);
  EXPECT_TRUE(CoefficientProvider::zeta().real_valued());
  EXPECT_EQ(CoefficientProvider::zeta().conjugated(), CoefficientProvider::zeta());
}

TEST(Provider, NoneServesAnything) {
  const auto p = CoefficientProvider::none();
  EXPECT_TRUE(p.table(1000)->entries().empty());
}

TEST(Provider, BudgetFromEnvironment) {
  ::setenv("SCREW_COEFF_BUDGET", "12345", 1);
  EXPECT_EQ(default_coefficient_budget(), 12345u);
  ::unsetenv("SCREW_COEFF_BUDGET");
  EXPECT_EQ(default_coefficient_budget(), 100000000u);
}
