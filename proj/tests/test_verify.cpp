#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "airygap/verify.hpp"

using namespace airygap;
using namespace airygap::verify;

namespace {

bool all_pass(const std::vector<CheckReport>& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckReport& c) { return c.passed; });
}

} // namespace

TEST(Sampler, DeterministicAndValid) {
  ConfigSampler a(7), b(7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next(), y = b.next();
    EXPECT_EQ(x.a, y.a);
    EXPECT_EQ(x.c, y.c);
    EXPECT_NO_THROW(validate(x));
    EXPECT_GE(x.a - x.b, 0.3);
    EXPECT_GE(x.b - x.c, 0.3);
  }
  ConfigSampler u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform(2.0, 3.0);
    EXPECT_GE(v, 2.0);
    EXPECT_LT(v, 3.0);
  }
}

TEST(Checks, IdentitySuitePasses) {
  const auto r = run_identity_suite(2024, 50);
  EXPECT_EQ(r.size(), 50u * 8u);
  for (const auto& c : r) EXPECT_TRUE(c.passed) << c.name << ' ' << c.residual << ' ' << c.context;
}

TEST(Checks, DerivativeAndFormSuitesPass) {
  EXPECT_TRUE(all_pass(run_derivative_suite(5)));
  EXPECT_TRUE(all_pass(run_form_suite(5)));
}

TEST(Checks, PinftyDeterminantIsOneOffSamples) {
  const GapConfig g{-0.8, -1.9, -2.6, 1};
  const auto ed = geometry::elliptic_data(g);
  for (double z : {-0.7, 0.0, 1.3, 9.0, 500.0})
    for (double s : {0.5, 2.0, 7.0}) EXPECT_NEAR(pinfty_det(g, ed, s, z), 1.0, 1e-9) << z << ' ' << s;
}

TEST(Checks, CorruptedDataFails) {
  const GapConfig g{-1, -2, -3, 1};
  auto ed = geometry::elliptic_data(g);
  ed.cycles.j0 *= 1.001;
  EXPECT_FALSE(check_riemann_relation(g, ed).passed);
  EXPECT_FALSE(all_pass(check_theta_constants(g, ed)));
  auto e2 = geometry::elliptic_data(g);
  e2.q0 += 1.0;
  EXPECT_FALSE(check_q_signs_and_bounds(g, e2).passed);
  auto e3 = geometry::elliptic_data(g);
  e3.d += 0.01;
  EXPECT_FALSE(all_pass(check_logderiv_identities(g, e3)));
}

TEST(Checks, DefaultSamplesAvoidBetaRoot) {
  const GapConfig g{-1, -2, -3, 1};
  const auto ed = geometry::elliptic_data(g);
  const auto z = default_pinfty_samples(g, ed);
  EXPECT_GE(z.size(), 5u);
  for (double x : z) EXPECT_GT(x, g.a);
}

TEST(Gates, TwoGapGateAndConstantAblation) {
  const GapConfig g{-1, -2, -3, 1};
  const auto ok = check_theorem1(g, {1.5, 2.5, 3.5});
  EXPECT_TRUE(ok.report.passed) << ok.report.context;
  EXPECT_EQ(ok.report.kind, CheckKind::asymptotic);
  const auto bad = check_theorem1(g, {1.5, 2.5, 3.5}, 0.05, 0.5);
  EXPECT_FALSE(bad.report.passed);
}

TEST(Gates, SeparationGate) {
  const auto r = check_separation({50, 200}, 2, 2, -3);
  EXPECT_TRUE(r.report.passed) << r.report.context;
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_LT(r.points[1].residual, r.points[0].residual);
}
