#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "airygap/geometry.hpp"
#include "airygap/specfun/elliptic.hpp"

using namespace airygap;
using geometry::q_of;

namespace {

const double pi = std::numbers::pi;

// Cycle integrals by the midpoint rule in theta after z = lo + (hi-lo) sin^2 theta.
// The transformed integrand is smooth and pi-periodic, so the rule converges
// geometrically. Independent of the library quadrature.
struct Oracle {
  double j[3];
  double i[3]; // magnitudes of Im I_k
};

Oracle oracle_cycles(const GapConfig& g) {
  const int n = 4000;
  Oracle o{};
  for (int m = 0; m < n; ++m) {
    const double th = (m + 0.5) * (pi / 2) / n;
    const double s2 = std::sin(th) * std::sin(th);
    const double zg = g.c + (g.b - g.c) * s2;
    const double wg = 2.0 / std::sqrt(g.a - zg) * (pi / 2) / n;
    const double zb = g.b + (g.a - g.b) * s2;
    const double wb = 2.0 / std::sqrt(zb - g.c) * (pi / 2) / n;
    for (int k = 0; k < 3; ++k) {
      o.j[k] += wg * std::pow(zg, k);
      o.i[k] += wb * std::pow(zb, k);
    }
  }
  return o;
}

std::vector<GapConfig> random_configs(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(-3.0, -0.05), ug(0.05, 3.0);
  std::vector<GapConfig> out;
  for (int i = 0; i < n; ++i) {
    GapConfig g;
    g.a = ua(rng);
    g.b = g.a - ug(rng);
    g.c = g.b - ug(rng);
    out.push_back(g);
  }
  return out;
}

const GapConfig kBase{-1, -2, -3, 1};

} // namespace

TEST(Geometry, ValidateRejectsBadOrdering) {
  EXPECT_THROW(validate({-2, -1, -3, 1}), domain_error);
  EXPECT_THROW(validate({1, -2, -3, 1}), domain_error);
  EXPECT_THROW(validate({-1, -2, -3, 0}), domain_error);
  EXPECT_THROW(validate({-1, -2, -3, NAN}), domain_error);
  EXPECT_THROW(validate({-1, -3 + 1e-9, -3, 1}), degenerate_configuration);
  EXPECT_THROW(validate({-2 + 1e-9, -2, -3, 1}), degenerate_configuration);
  EXPECT_THROW(validate({-1e-11, -2, -3, 1}), degenerate_configuration);
  EXPECT_NO_THROW(validate(kBase));
}

TEST(Geometry, BaseConfigurationValues) {
  const auto ed = geometry::elliptic_data(kBase);
  const double k_lemn = std::pow(std::tgamma(0.25), 2) / (4 * std::sqrt(pi));
  EXPECT_NEAR(ed.cycles.j0, -2 * k_lemn / std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(ed.tau.real(), 0.0, 1e-14);
  EXPECT_NEAR(ed.tau.imag(), 1.0, 1e-13);
  EXPECT_NEAR(ed.q1, 3.0, 0);
  EXPECT_NEAR(ed.q0, 1.20972008562221, 1e-12);
  EXPECT_NEAR(ed.alpha2, 0.419440171244412, 1e-12);
  EXPECT_NEAR(ed.omega, -0.762759763501811, 1e-12);
  EXPECT_LT(std::abs(ed.omega_imag_residual), 1e-12);
}

TEST(Geometry, CycleIntegralsMatchEllipticReduction) {
  for (const auto& g : random_configs(21, 30)) {
    const auto ci = geometry::cycle_integrals(g);
    const double k = std::sqrt((g.b - g.c) / (g.a - g.c));
    const double kp = std::sqrt((g.a - g.b) / (g.a - g.c));
    const double kk = specfun::elliptic_ke(k).big_k;
    const double kkp = specfun::elliptic_ke(kp).big_k;
    EXPECT_NEAR(ci.j0, -2 * kk / std::sqrt(g.a - g.c), 1e-12 * std::abs(ci.j0));
    EXPECT_NEAR(std::abs(ci.i0), 2 * kkp / std::sqrt(g.a - g.c), 1e-12 * std::abs(ci.i0));
    const auto ed = geometry::elliptic_data(g);
    EXPECT_NEAR(ed.tau.imag(), kkp / kk, 1e-12 * ed.tau.imag());
  }
}

TEST(Geometry, CycleIntegralsMatchMidpointOracle) {
  for (const auto& g : random_configs(22, 20)) {
    const auto ci = geometry::cycle_integrals(g);
    const Oracle o = oracle_cycles(g);
    const double jj[3] = {ci.j0, ci.j1, ci.j2};
    const double ii[3] = {ci.i0, ci.i1, ci.i2};
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(std::abs(jj[k]), std::abs(o.j[k]), 1e-12 * std::max(1.0, std::abs(o.j[k])));
      EXPECT_NEAR(std::abs(ii[k]), std::abs(o.i[k]), 1e-12 * std::max(1.0, std::abs(o.i[k])));
    }
  }
}

TEST(Geometry, Q0FromOracleAndAlternativeForm) {
  for (const auto& g : random_configs(23, 20)) {
    const auto ed = geometry::elliptic_data(g);
    const Oracle o = oracle_cycles(g);
    const double q1 = -(g.a + g.b + g.c) / 2;
    const double q0 = -(o.j[2] + q1 * o.j[1]) / o.j[0];
    EXPECT_NEAR(ed.q0, q0, 1e-11 * std::max(1.0, std::abs(q0)));
    const double e2 = g.a * g.b + g.a * g.c + g.b * g.c;
    EXPECT_NEAR(ed.q0, e2 / 3 + q1 * ed.cycles.j1 / (3 * ed.cycles.j0), 1e-11 * std::max(1.0, std::abs(q0)));
  }
}

TEST(Geometry, GapConditionHolds) {
  for (const auto& g : random_configs(24, 20)) {
    const auto ed = geometry::elliptic_data(g);
    EXPECT_LT(std::abs(geometry::gap_condition_residual(g, ed)), 1e-10);
  }
}

TEST(Geometry, Alpha2FormsAgreeWithCubicTerm) {
  for (const auto& g : random_configs(25, 20)) {
    const auto ed = geometry::elliptic_data(g);
    const double a = g.a, b = g.b, c = g.c;
    const double base = a * a * a + b * b * b + c * c * c - (a + b) * (a + c) * (b + c);
    const double via_q1 = -(base - 8 * ed.q0 * ed.q1) / 12;
    EXPECT_NEAR(ed.alpha2, via_q1, 1e-13 * std::max(1.0, std::abs(via_q1)));
    // the variant with c^2 in place of c^3 is a different number
    const double squared = -(base - c * c * c + c * c + 4 * (a + b + c) * ed.q0) / 12;
    EXPECT_GT(std::abs(squared - ed.alpha2), 1e-3);
  }
}

TEST(Geometry, Alpha2Positive) {
  for (const auto& g : random_configs(26, 50)) EXPECT_GT(geometry::elliptic_data(g).alpha2, 0.0);
}

TEST(Geometry, OmegaFromOracleCycles) {
  for (const auto& g : random_configs(27, 10)) {
    const auto ed = geometry::elliptic_data(g);
    const Oracle o = oracle_cycles(g);
    // Omega = (i/pi)(I2 + q1 I1 + q0 I0) with I_k = -i |I_k| sign pattern of the band integrals
    const double mag = (o.i[2] + ed.q1 * o.i[1] + ed.q0 * o.i[0]) / pi;
    EXPECT_NEAR(std::abs(ed.omega), std::abs(mag), 1e-11);
  }
}

TEST(Geometry, QSignsAndSharpBounds) {
  for (const auto& g : random_configs(28, 50)) {
    const auto ed = geometry::elliptic_data(g);
    EXPECT_LT(q_of(ed, g.a), 0);
    EXPECT_LE(q_of(ed, g.b), -(g.a - g.b) * (g.b - g.c) / 3);
    EXPECT_GE(q_of(ed, g.c), (g.a - g.c) * (g.b - g.c) / 3);
  }
}

TEST(Geometry, BetaStarsSolveQuadratic) {
  for (const auto& g : random_configs(29, 20)) {
    const auto [b1, b2] = geometry::beta_stars(g);
    EXPECT_LT(b1, b2);
    for (double r : {b1, b2}) EXPECT_NEAR((r - g.a) * (r - g.c) - (r - g.b), 0.0, 1e-12);
  }
}

TEST(Geometry, ConstantDOnBaseConfig) {
  const auto ed = geometry::elliptic_data(kBase);
  EXPECT_NEAR(ed.d, 0.186357806580189, 1e-12);
  // d = (1/(2|J0|)) int_c^{beta1*} |p|^{-1/2} by the midpoint rule in theta
  const double b1 = ed.beta1_star;
  const double th1 = std::asin(std::sqrt((b1 - kBase.c) / (kBase.b - kBase.c)));
  const int n = 20000;
  double s = 0;
  for (int m = 0; m < n; ++m) {
    const double th = (m + 0.5) * th1 / n;
    const double z = kBase.c + (kBase.b - kBase.c) * std::sin(th) * std::sin(th);
    s += 2.0 / std::sqrt(kBase.a - z) * th1 / n;
  }
  EXPECT_NEAR(ed.d, s / (2 * std::abs(ed.cycles.j0)), 1e-8);
}

TEST(Geometry, BetaStarsOnBaseConfig) {
  const auto ed = geometry::elliptic_data(kBase);
  EXPECT_NEAR(ed.beta1_star, (-3 - std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(ed.beta2_star, (-3 + std::sqrt(5.0)) / 2, 1e-14);
}

TEST(Geometry, MomentBounds) {
  for (const auto& g : random_configs(32, 30)) {
    const auto ci = geometry::cycle_integrals(g);
    const double j0 = std::abs(ci.j0);
    EXPECT_LE(std::abs(g.b) * j0, std::abs(ci.j1));
    EXPECT_LE(std::abs(ci.j1), std::abs(g.c) * j0);
    EXPECT_LE(g.b * g.b * j0, std::abs(ci.j2));
    EXPECT_LE(std::abs(ci.j2), g.c * g.c * j0);
  }
}

TEST(Geometry, AbelMapLimitsAndAbelTheorem) {
  for (const auto& g : random_configs(33, 10)) {
    const auto ed = geometry::elliptic_data(g);
    EXPECT_NEAR(geometry::u_map(g, ed, g.a + 1e6), -0.5, 1e-3);
    double r = geometry::u_map(g, ed, ed.beta2_star) + ed.d;
    r -= std::round(r);
    EXPECT_NEAR(r, 0.0, 1e-9);
  }
  double prev = 0;
  const auto ed = geometry::elliptic_data(kBase);
  for (double x : {-0.9, -0.5, 0.0, 1.0, 5.0, 20.0, 100.0}) {
    const double u = geometry::u_map(kBase, ed, x);
    EXPECT_LT(u, prev);
    prev = u;
  }
}

TEST(Geometry, BetaLimits) {
  const auto g = kBase;
  const auto ed = geometry::elliptic_data(g);
  // beta grows like x^{1/4}
  EXPECT_NEAR(geometry::beta_fn(g, 1e6) / std::pow(1e6, 0.25), 1.0, 1e-6);
  EXPECT_NEAR(geometry::beta_fn(g, ed.beta2_star), 1.0, 1e-14);
  const double h = 1e-8;
  const double b0 = std::sqrt(std::sqrt((g.a - g.c) / (g.a - g.b)));
  EXPECT_NEAR(geometry::beta_fn(g, g.a + h) / (b0 * std::pow(h, 0.25)), 1.0, 1e-6);
}

TEST(Geometry, AbelMapProperties) {
  const auto ed = geometry::elliptic_data(kBase);
  EXPECT_NEAR(geometry::u_map(kBase, ed, kBase.a), 0.0, 1e-15);
  const double h = 1e-5;
  for (double x : {-0.7, 0.0, 3.0, 40.0}) {
    const double fd = (geometry::u_map(kBase, ed, x + h) - geometry::u_map(kBase, ed, x - h)) / (2 * h);
    const double exact = 1.0 / (2 * ed.cycles.j0 * std::sqrt(geometry::p_of(kBase, x)));
    EXPECT_NEAR(fd, exact, 1e-8 * std::max(1.0, std::abs(exact))) << x;
  }
  EXPECT_THROW(geometry::u_map(kBase, ed, -1.5), domain_error);
  EXPECT_NEAR(ed.u_b_plus.imag(), -0.5, 1e-13);
  EXPECT_NEAR(ed.u_c_plus.real(), -0.5, 1e-13);
}

TEST(Geometry, BetaFunction) {
  EXPECT_NEAR(geometry::beta_fn(kBase, kBase.a), 0.0, 1e-15);
  EXPECT_NEAR(geometry::beta_fn(kBase, 1.0), std::pow(2.0 * 4.0 / 3.0, 0.25), 1e-15);
  EXPECT_THROW(geometry::beta_fn(kBase, -2.0), domain_error);
}

TEST(Geometry, GFunctionAndDerivative) {
  const auto ed = geometry::elliptic_data(kBase);
  EXPECT_NEAR(geometry::g_eval(kBase, ed, kBase.a), 0.0, 1e-15);
  const double h = 1e-5;
  for (double x : {-0.5, 0.5, 2.0, 7.0, 50.0}) {
    const double fd = (geometry::g_eval(kBase, ed, x + h) - geometry::g_eval(kBase, ed, x - h)) / (2 * h);
    const double exact = q_of(ed, x) / std::sqrt(geometry::p_of(kBase, x));
    EXPECT_NEAR(fd, exact, 1e-7 * std::max(1.0, std::abs(exact))) << x;
  }
  EXPECT_THROW(geometry::g_eval(kBase, ed, -1.1), domain_error);
}

TEST(Geometry, GLargeArgumentResidualDecay) {
  for (const auto& g : random_configs(30, 5)) {
    const auto ed = geometry::elliptic_data(g);
    const double r3 = geometry::g_residual(g, ed, 1e3);
    const double r4 = geometry::g_residual(g, ed, 1e4);
    const double c_est = std::abs(r3) * std::pow(1e3, 2.5);
    EXPECT_LE(std::abs(r4), 1.5 * c_est * std::pow(1e4, -2.5) + 1e-15);
  }
  const auto ed = geometry::elliptic_data(kBase);
  EXPECT_NEAR(geometry::g_residual(kBase, ed, 1e3) * std::pow(1e3, 2.5), -0.87, 0.05);
}

TEST(Geometry, AlphaCoefficientsFitG) {
  const auto ed = geometry::elliptic_data(kBase);
  // fit alpha1 from g - (2/3)x^{3/2} at large x
  const double x = 1e6;
  EXPECT_NEAR(geometry::g_tail(kBase, ed, x) * std::sqrt(x), ed.alpha1, 1e-6);
}

TEST(Geometry, ClosedFormDerivativesMatchFiniteDifferences) {
  for (const auto& g : random_configs(31, 5)) {
    const auto ed = geometry::elliptic_data(g);
    const auto d = geometry::closed_form_derivatives(g, ed);
    auto at = [&](double da, double db) {
      GapConfig h = g;
      h.a += da;
      h.b += db;
      return geometry::elliptic_data(h);
    };
    const double hb = 1e-5 * std::max(1.0, std::abs(g.b));
    const double ha = 1e-5 * std::max(1.0, std::abs(g.a));
    const auto bp = at(0, hb), bm = at(0, -hb), ap = at(ha, 0), am = at(-ha, 0);
    auto near = [](double x, double y) { EXPECT_NEAR(x, y, 1e-6 * std::max(1.0, std::abs(y))); };
    near((bp.omega - bm.omega) / (2 * hb), d.domega_db);
    near((ap.omega - am.omega) / (2 * ha), d.domega_da);
    near((bp.tau.imag() - bm.tau.imag()) / (2 * hb), d.dtau_db.imag());
    near((ap.tau.imag() - am.tau.imag()) / (2 * ha), d.dtau_da.imag());
    near((bp.alpha2 - bm.alpha2) / (2 * hb), d.dalpha2_db);
    near((ap.alpha2 - am.alpha2) / (2 * ha), d.dalpha2_da);
    near((bp.cycles.j0 - bm.cycles.j0) / (2 * hb), d.dj0_db);
    near((bp.q0 - bm.q0) / (2 * hb), d.dq0_db);
  }
}

TEST(Geometry, NearDegenerateLimits) {
  const double a = -1, c = -3, eps = 1e-3;
  const GapConfig g{a, c + eps, c, 1};
  const auto ed = geometry::elliptic_data(g);
  // leading term to 1e-2; the first-order coefficient of J0 is 1/(4(a-c))
  // (from K(k) = (pi/2)(1 + k^2/4 + ...)), half the 1/(2(a-c)) sometimes quoted
  const double j0_lead = -pi / std::sqrt(a - c);
  EXPECT_NEAR(ed.cycles.j0 / j0_lead, 1.0, 1e-2);
  const double j0 = j0_lead * (1 + eps / (4 * (a - c)));
  EXPECT_NEAR(ed.cycles.j0 / j0, 1.0, 1e-6);
  EXPECT_GT(std::abs(ed.cycles.j0 / (j0_lead * (1 + eps / (2 * (a - c)))) - 1), 1e-4);
  EXPECT_NEAR(ed.tau.imag() / ((-std::log(eps) + std::log(16 * (a - c))) / pi), 1.0, 1e-3);
  EXPECT_NEAR(ed.q0 / (a * c / 2 + a / 4 * eps), 1.0, 1e-5);
  EXPECT_NEAR(ed.alpha2 / (-a * a * a / 12), 1.0, 1e-4);
  // b - c = 1e-4 for the alpha2 limit
  const auto e4 = geometry::elliptic_data({a, c + 1e-4, c, 1});
  EXPECT_NEAR(e4.alpha2 / (-a * a * a / 12), 1.0, 1e-2);
}
