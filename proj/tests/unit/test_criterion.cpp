#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "screw/criterion.hpp"
#include "screw/errors.hpp"
#include "screw/zero_free.hpp"

using namespace screw;

namespace {

const ZeroMultiset& zeta_zeros_1k() {
  static const ZeroMultiset z = ingest_zeros(SCREW_DATA_DIR "/zeta_zeros_1k.txt", ZeroFormat::plain_imag, true);
  return z;
}

double factorial(unsigned n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(Grid, InclusiveStartClampedStop) {
  EXPECT_EQ(make_grid(0.0, 1.0, 0.25), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(make_grid(0.0, 1.0, 0.3).back(), 1.0);
  EXPECT_EQ(make_grid(0.0, 1.0, 0.3).size(), 5u);
  EXPECT_EQ(make_grid(2.0, 2.0, 1.0), (std::vector<double>{2.0}));
  EXPECT_EQ(make_grid(0.0, 50.0, 0.01).size(), 5001u);
  EXPECT_THROW(make_grid(1.0, 0.0, 0.1), precondition_error);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), precondition_error);
}

TEST(Evaluator, Names) {
  EXPECT_EQ(evaluator_from_string(to_string(Evaluator::zero_free)), Evaluator::zero_free);
  EXPECT_EQ(evaluator_from_string("zero_sum"), Evaluator::zero_sum);
  EXPECT_THROW(evaluator_from_string("zero-sum?"), precondition_error);
}

TEST(Scan, ZetaHasNoViolations) {
  const auto r = scan_sign(zeta_zeros_1k(), 0.0, 0.0, 50.0, 0.01);
  EXPECT_EQ(r.t_grid.size(), 5001u);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GE(r.min_value, -1e-12);
  EXPECT_EQ(r.min_value, *std::min_element(r.values.begin(), r.values.end()));
  EXPECT_FALSE(r.assumption.empty());
  EXPECT_LE(r.refined_min_value, r.min_value);
  EXPECT_LE(std::abs(r.refined_min_location - r.min_location), 0.01 + 1e-12);
}

TEST(Scan, CentralZeroIsQuadratic) {
  const ZeroMultiset central({}, 1, true, "m0", TailModel::none);
  const auto r = scan_sign(central, 0.0, 0.0, 10.0, 0.1);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    EXPECT_DOUBLE_EQ(r.values[i], 0.5 * r.t_grid[i] * r.t_grid[i]);
    if (i) {
      EXPECT_GT(r.values[i], r.values[i - 1]);
    }
  }
  EXPECT_TRUE(r.violations.empty());
}

TEST(Scan, OffLineZerosDetected) {
  const auto z = ingest_zeros(SCREW_FIXTURE_DIR "/offline_zeros.csv", ZeroFormat::csv_complex, false);
  const auto r = scan_sign(z, 0.0, 0.0, 50.0, 0.01);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_LT(r.min_value, -1.0);
  // closed form contribution of the four zeros +-5 +- 0.3i at the reported minimum
  const double t = r.min_location;
  double expected = 0.0;
  for (const cplx g : {cplx{5, 0.3}, cplx{5, -0.3}, cplx{-5, 0.3}, cplx{-5, -0.3}})
    expected -= ((std::exp(cplx{0.0, -1.0} * g * t) - 1.0) / (g * g)).real();
  for (const double g : {14.134725141734693, 21.022039638771555})
    expected += 2.0 * (1.0 - std::cos(g * t)) / (g * g);
  EXPECT_NEAR(r.min_value, expected, 1e-9 * std::abs(expected));
}

TEST(Scan, RealZeroPairIsInvisible) {
  // gamma = +-0.3i are real zeros s = 1/2 +- 0.3, which the sign criterion excludes by hypothesis:
  // -g = (e^{0.3 t} + e^{-0.3 t} - 2) / 0.09 stays positive
  const ZeroMultiset z({{cplx{0.0, 0.3}}, {cplx{0.0, -0.3}}}, 0, false, "pair", TailModel::none);
  const auto r = scan_sign(z, 0.0, 0.0, 40.0, 0.5);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_NEAR(r.values.back(), (std::exp(12.0) + std::exp(-12.0) - 2.0) / 0.09, 1e-12 * std::exp(12.0));
  EXPECT_NE(r.assumption.find("real"), std::string::npos);
}

TEST(Scan, FixedToleranceAndViolationsExact) {
  const ZeroMultiset z({{cplx{0.3, 0.2}}, {cplx{-0.3, 0.2}}}, 0, false, "pair", TailModel::none);
  ScanOptions o;
  o.tolerance = 2.0;
  const auto r = scan_sign(z, 0.0, 0.0, 10.0, 0.5, o);
  std::size_t below = 0;
  for (const double v : r.values) below += v < -2.0;
  EXPECT_EQ(r.violations.size(), below);
  EXPECT_EQ(r.tolerance, 2.0);
}

TEST(Scan, ZeroFreeAgreesWithZeroSum) {
  const auto a = scan_sign(zeta_spec(), 0.0, 15.0, 0.25);
  const auto b = scan_sign(zeta_zeros_1k(), 0.0, 0.0, 15.0, 0.25);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double tail = g_from_zeros(a.t_grid[i], zeta_zeros_1k(), 0.0).tail_estimate;
    EXPECT_LE(std::abs(a.values[i] - b.values[i]), tail + a.tolerances[i] + b.tolerances[i]) << a.t_grid[i];
  }
  EXPECT_TRUE(a.violations.empty());
  EXPECT_EQ(a.evaluator, Evaluator::zero_free);
}

TEST(Scan, ZeroFreeBudget) {
  ScanOptions o;
  o.budget = 10000;
  EXPECT_THROW(scan_sign(zeta_spec(), 0.0, 20.0, 0.5, o), budget_error);
  EXPECT_THROW(scan_sign(zeta_zeros_1k(), 0.0, 5.0, 1.0, 0.1), precondition_error);
}

TEST(Moments, CentralZeroClosedForm) {
  const ZeroMultiset central({}, 1, true, "m0", TailModel::none);
  const std::size_t cut[] = {0, 0};
  const auto t = moments(central, 0.0, 5, cut);
  for (const auto& e : t.entries) {
    // int_0^inf e^{-t/2} (t^2/2) t^n dt = (n+2)! 2^{n+3} / 2
    const double exact = factorial(e.n + 2) * std::pow(2.0, e.n + 2);
    EXPECT_NEAR(e.mu, exact, 1e-9 * exact) << e.n;
  }
  EXPECT_NEAR(t.entries.front().mu, 8.0, 1e-12);
  EXPECT_NEAR(t.entries[2].mu, 48.0, 1e-12);
}

TEST(Moments, ZetaRowsNonNegativeAndStable) {
  const std::size_t cut[] = {300, 1000};
  const auto t = moments(zeta_zeros_1k(), 0.0, 3, cut);
  ASSERT_EQ(t.entries.size(), 8u);
  for (const auto& e : t.entries) {
    EXPECT_GE(e.mu, 0.0);
    EXPECT_GE(e.mu_raw, 0.0);
    EXPECT_GE(e.mu, e.mu_raw);
    if (e.zero_count == 1000) {
      EXPECT_LE(e.stability, 1e-3) << e.n;
    } else {
      EXPECT_TRUE(std::isnan(e.stability));
    }
  }
  EXPECT_TRUE(t.warnings.empty());
}

TEST(Moments, Preconditions) {
  const std::size_t one[] = {100};
  EXPECT_THROW(moments(zeta_zeros_1k(), 0.0, 2, one), precondition_error);
  const std::size_t two[] = {100, 200};
  EXPECT_THROW(moments(zeta_zeros_1k(), 0.0, 21, two), precondition_error);
  const ZeroMultiset off({{cplx{1.0, 0.2}}}, 0, false, "x", TailModel::none);
  const std::size_t c[] = {1, 1};
  EXPECT_THROW(moments(off, 0.0, 1, c), precondition_error);
}

TEST(Symmetrize, ZetaDoubles) {
  const auto g = symmetrize_ff_star(zeta_spec());
  EXPECT_EQ(g.gamma.factors.size(), 2u);
  EXPECT_EQ(g.gamma.m_F, 2u);
  EXPECT_NEAR(g.gamma.Q, 1.0 / pi, 1e-16);
  const auto t = g.coefficients.table(10);
  EXPECT_DOUBLE_EQ(t->value(8).real(), 2.0 * std::log(2.0));
  EXPECT_EQ(g.B, 0.0);
  EXPECT_TRUE(g.self_dual);
}

TEST(Symmetrize, ImaginaryCoefficientCancels) {
  const auto f = load_spec_file(SCREW_FIXTURE_DIR "/asymmetric.json");
  ASSERT_NEAR(f.coefficients.table(4)->value(2).imag(), std::log(2.0), 1e-16);
  const auto g = symmetrize_ff_star(f);
  EXPECT_EQ(g.coefficients.table(4)->value(2), cplx{0.0});
  EXPECT_EQ(g.gamma.factors[1].mu, std::conj(f.gamma.factors[0].mu));
  EXPECT_EQ(dual(g), g);
}

TEST(Symmetrize, PhiIsTwiceRealPart) {
  const auto f = load_spec_file(SCREW_FIXTURE_DIR "/asymmetric.json");
  const auto g = symmetrize_ff_star(f);
  for (double t = 0.0; t <= std::log(4.0); t += 0.01) {
    const auto a = phi_F(t, g), b = phi_F(t, f);
    EXPECT_LE(std::abs(a.total - 2.0 * b.total.real()), 1e-8) << t;
  }
  const auto z = symmetrize_ff_star(zeta_spec());
  for (double t = 0.0; t <= 10.0; t += 0.5)
    EXPECT_LE(std::abs(phi_F(t, z).total - 2.0 * phi_F(t, zeta_spec()).total.real()), 1e-8) << t;
}
