#include <gtest/gtest.h>

#include <fstream>

#include "oracles.hpp"
#include "screw/errors.hpp"
#include "screw/lfunction.hpp"

using namespace screw;

namespace {

cplx zeta_log_derivative_oracle(cplx s) {
  const auto p = oracle::zeta_em({s.real(), s.imag()});
  const auto r = p.dzeta / p.zeta;
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

LFunctionSpec asymmetric_spec() {
  LFunctionSpec s;
  s.id = "asym";
  s.gamma.Q = 1.3;
  s.gamma.factors = {{0.5, cplx{0.25, 0.75}}};
  s.gamma.omega = cplx{0.6, 0.8};
  s.coefficients = CoefficientProvider::values({{2, cplx{0.1, 0.2}}, {3, cplx{-0.3, 0.05}}});
  s.B = 0.3;
  return make_spec(s);
}

}  // namespace

TEST(GammaData, Validation) {
  GammaFactorData g;
  g.Q = 0.0;
  EXPECT_THROW(g.validate(), precondition_error);
  g.Q = 1.0;
  g.factors = {{-0.5, 0.0}};
  EXPECT_THROW(g.validate(), precondition_error);
  g.factors = {{0.5, cplx{-0.1, 0.0}}};
  EXPECT_THROW(g.validate(), precondition_error);
  g.factors = {{0.5, 0.0}};
  g.omega = cplx{1.0 + 1e-9, 0.0};
  EXPECT_THROW(g.validate(), precondition_error);
  g.omega = std::polar(1.0, 0.3);
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.degree(), 1.0);
}

TEST(Spec, SelfDualForcesZeroB) {
  LFunctionSpec s = zeta_spec();
  s.B = 0.1;
  EXPECT_THROW(s.validate(), precondition_error);
  s.B.reset();
  EXPECT_EQ(make_spec(s).B, 0.0);
  LFunctionSpec u = asymmetric_spec();
  u.B.reset();
  EXPECT_THROW(u.central_B(), precondition_error);
}

TEST(FLogDerivative, ZetaAtTwo) {
  const double tol = 1e-6;
  const auto e = f_log_derivative(zeta_spec(), 2.0, tol);
  EXPECT_LE(std::abs(e.value - zeta_log_derivative_oracle(2.0)), 10 * tol);
  EXPECT_FALSE(e.heuristic);
}

TEST(FLogDerivative, ZetaAtTen) {
  const auto e = f_log_derivative(zeta_spec(), 10.0, 1e-20);
  const auto spf = oracle::spf_table(2000);
  long double direct = 0.0L;
  for (std::uint32_t n = 2; n <= 2000; ++n) direct -= oracle::von_mangoldt(n, spf) * std::pow(static_cast<long double>(n), -10.0L);
  EXPECT_NEAR(e.value.real(), static_cast<double>(direct), 1e-18);
  EXPECT_NEAR(e.value.real(), -std::log(2.0) / 1024.0, 2e-5);
}

TEST(FLogDerivative, OffAxisAgainstEulerMaclaurin) {
  for (const cplx s : {cplx{2.5, 3.0}, cplx{3.0, -14.0}, cplx{2.2, 0.5}}) {
    const auto e = f_log_derivative(zeta_spec(), s, 1e-7);
    EXPECT_LE(std::abs(e.value - zeta_log_derivative_oracle(s)), 1e-7) << s;
  }
}

TEST(FLogDerivative, DomainAndConvergence) {
  EXPECT_THROW(f_log_derivative(zeta_spec(), cplx{1.0, 2.0}, 1e-8), domain_error);
  EXPECT_THROW(f_log_derivative(zeta_spec(), cplx{1.04, 0.0}, 1e-8), domain_error);
  EvalOptions small;
  small.budget = 1000;
  EXPECT_THROW(f_log_derivative(zeta_spec(), cplx{1.1, 0.0}, 1e-12, small), convergence_error);
  // a rigorous tail bound this tight at Re s = 2 would need ~1e13 coefficients
  EXPECT_THROW(f_log_derivative(zeta_spec(), 2.0, 1e-12), convergence_error);
}

TEST(FLogDerivative, HeuristicForFiniteSources) {
  const auto e = f_log_derivative(asymmetric_spec(), 30.0, 1e-12);
  EXPECT_TRUE(e.heuristic);
  const cplx direct = -(cplx{0.1, 0.2} * std::pow(2.0, -30) + cplx{-0.3, 0.05} * std::pow(3.0, -30));
  // the list ends at n = 3, so the tail bound cannot be driven down at Re s = 3
  EXPECT_THROW(f_log_derivative(asymmetric_spec(), 3.0, 1e-12), convergence_error);
  EXPECT_LE(std::abs(e.value - direct), 1e-15);
}

TEST(XiLogDerivative, ZetaAtTwoAssembled) {
  const double g0 = 0.57721566490153286;
  const cplx expected = 1.0 + 0.5 - 0.5 * std::log(pi) - 0.5 * g0 + zeta_log_derivative_oracle(2.0);
  EXPECT_LE(std::abs(xi_log_derivative(zeta_spec(), 2.0, 1e-6).value - expected), 2e-6);
}

TEST(XiLogDerivative, PolesAndReflection) {
  EXPECT_THROW(xi_log_derivative(zeta_spec(), 1.0, 1e-10), pole_error);
  const cplx s{3.0, 2.0};
  for (const auto& spec : {zeta_spec(), quadratic_dirichlet_spec(-4), quadratic_dirichlet_spec(5)}) {
    const cplx a = xi_log_derivative(spec, s, 1e-12).value;
    const cplx b = xi_log_derivative(spec, std::conj(s), 1e-12).value;
    EXPECT_LE(std::abs(b - std::conj(a)), 1e-12) << spec.id;
    const cplx fa = f_log_derivative(spec, s, 1e-12).value;
    const cplx fb = f_log_derivative(spec, std::conj(s), 1e-12).value;
    EXPECT_LE(std::abs(fb - std::conj(fa)), 1e-12) << spec.id;
  }
}

TEST(XiLogDerivative, PresentationInvariance) {
  for (const cplx s : {cplx{2.5}, cplx{2.5, 4.0}, cplx{3.0, -20.0}, cplx{4.0, 0.1}}) {
    const cplx a = xi_log_derivative(zeta_spec(), s, 1e-9).value;
    const cplx b = xi_log_derivative(zeta_duplicated_spec(), s, 1e-9).value;
    EXPECT_LE(std::abs(a - b), 1e-8) << s;
  }
}

TEST(Catalog, DirichletGammaData) {
  const auto odd = quadratic_dirichlet_spec(-4);
  ASSERT_EQ(odd.gamma.factors.size(), 1u);
  EXPECT_EQ(odd.gamma.factors[0].mu, cplx{0.5});
  EXPECT_NEAR(odd.gamma.Q, std::sqrt(4.0 / pi), 1e-15);
  EXPECT_EQ(quadratic_dirichlet_spec(5).gamma.factors[0].mu, cplx{0.0});
}

TEST(Dual, Definition) {
  const auto z = zeta_spec();
  EXPECT_EQ(dual(z), z);
  LFunctionSpec s = asymmetric_spec();
  s.gamma.factors = {{0.5, cplx{1.0, 1.0}}};
  const auto d = dual(s);
  EXPECT_EQ(d.gamma.factors[0].mu, (cplx{1.0, -1.0}));
  EXPECT_EQ(d.B, -0.3);
  EXPECT_EQ(d.gamma.omega, std::conj(s.gamma.omega));
  EXPECT_EQ(d.gamma.Q, s.gamma.Q);
  EXPECT_EQ(d.gamma.m_F, s.gamma.m_F);
  EXPECT_EQ(d.m0, s.m0);
  EXPECT_EQ(d.coefficients.table(3)->value(2), (cplx{0.1, -0.2}));
}

TEST(Dual, Involution) {
  for (const auto& s : {asymmetric_spec(), zeta_spec(), quadratic_dirichlet_spec(-7)}) EXPECT_EQ(dual(dual(s)), s) << s.id;
}

TEST(Catalog, Contents) {
  const auto cat = builtin_catalog();
  ASSERT_FALSE(cat.empty());
  EXPECT_EQ(cat.front().id, "zeta");
  EXPECT_EQ(cat.front().gamma.m_F, 1u);
  for (const auto& s : cat)
    if (s.id.rfind("dirichlet:", 0) == 0) {
      EXPECT_EQ(s.gamma.m_F, 0u) << s.id;
    }
  EXPECT_TRUE(find_builtin("dirichlet:-4").has_value());
  EXPECT_FALSE(find_builtin("dirichlet:-12").has_value());
  EXPECT_FALSE(find_builtin("dirichlet:5x").has_value());
  EXPECT_FALSE(find_builtin("nope").has_value());
}

TEST(SpecJson, RoundTrip) {
  for (const auto& s : builtin_catalog()) EXPECT_EQ(spec_from_json(spec_to_json(s)), s) << s.id;
  const auto a = asymmetric_spec();
  EXPECT_EQ(spec_from_json(spec_to_json(a)), a);
  const auto t = dual(a);
  EXPECT_EQ(spec_from_json(spec_to_json(t)), t);
  LFunctionSpec unknown = a;
  unknown.B.reset();
  EXPECT_EQ(spec_from_json(spec_to_json(unknown)), unknown);
}

TEST(SpecJson, FixtureFiles) {
  const auto m0 = load_spec_file(SCREW_FIXTURE_DIR "/m0_only.json");
  EXPECT_EQ(m0.m0, 1u);
  EXPECT_TRUE(m0.gamma.factors.empty());
  EXPECT_EQ(m0.coefficients.source(), CoefficientSource::none);
  const auto asym = load_spec_file(SCREW_FIXTURE_DIR "/asymmetric.json");
  EXPECT_EQ(asym.gamma.factors.size(), 1u);
  EXPECT_EQ(asym.B, 0.3);
  EXPECT_FALSE(asym.self_dual);
}

TEST(SpecJson, CoefficientFileResolvedAgainstBase) {
  const std::string text = R"({"id":"f","mF":0,"Q":1,"factors":[],"omega_re":1,"omega_im":0,"m0":0,
    "self_dual":false,"B":0.0,"coeffs":{"file":"coeffs.txt"}})";
  const auto s = spec_from_json(text, SCREW_FIXTURE_DIR);
  EXPECT_EQ(s.coefficients.source(), CoefficientSource::file);
  EXPECT_GE(s.coefficients.max_cutoff(), 2u);
  EXPECT_NO_THROW(s.coefficients.table(2));
}

TEST(SpecJson, Malformed) {
  EXPECT_THROW(spec_from_json("{"), parse_error);
  EXPECT_THROW(spec_from_json(R"({"id":"x","Q":-1,"mF":0,"factors":[],"coeffs":"zeta"})"), error);
  EXPECT_THROW(spec_from_json(R"({"id":"x","Q":1,"mF":0,"factors":[],"coeffs":"bogus"})"), error);
}
