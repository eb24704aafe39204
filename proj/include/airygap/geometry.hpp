#ifndef AIRYGAP_GEOMETRY_HPP
#define AIRYGAP_GEOMETRY_HPP

// Quantities attached to the elliptic curve y^2 = p(z) = (z-a)(z-b)(z-c),
// c < b < a < 0.
//
// Conventions:
//   J_k = -int_c^b z^k |p|^{-1/2} dz                 (real, J_0 < 0)
//   I_k = (1/i) int_b^a z^k |p|^{-1/2} dz = -i X_k   (purely imaginary)
//   tau = I_0 / J_0,  q(z) = z^2 + q1 z + q0,  Omega = (i/pi)(I_2 + q1 I_1 + q0 I_0)
//
// Every integral has its square-root endpoint singularities removed by a
// substitution before quadrature (see the individual functions).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "airygap/errors.hpp"
#include "airygap/quadrature.hpp"

namespace airygap {

using cplx = std::complex<double>;

/// Gap set s*((c,b) u (a,+inf)). s is only used by determinant and
/// asymptotic routines.
struct GapConfig {
  double a{-1};
  double b{-2};
  double c{-3};
  double s{1};
};

inline void validate(const GapConfig& cfg) {
  if (!std::isfinite(cfg.a) || !std::isfinite(cfg.b) || !std::isfinite(cfg.c) || !std::isfinite(cfg.s))
    throw domain_error("configuration: non-finite parameter");
  if (!(cfg.c < cfg.b && cfg.b < cfg.a && cfg.a < 0)) {
    std::ostringstream os;
    os << "configuration: need c < b < a < 0, got a=" << cfg.a << " b=" << cfg.b << " c=" << cfg.c;
    throw domain_error(os.str());
  }
  if (!(cfg.s > 0)) throw domain_error("configuration: s must be positive");
  if (cfg.b - cfg.c < 1e-8) throw degenerate_configuration("configuration: b - c below 1e-8");
  if (cfg.a - cfg.b < 1e-8) throw degenerate_configuration("configuration: a - b below 1e-8");
  if (std::abs(cfg.a) < 1e-10) throw degenerate_configuration("configuration: |a| below 1e-10");
}

struct CycleIntegrals {
  double i0{}, i1{}, i2{}; // Im I_k
  double j0{}, j1{}, j2{};
  double k{};              // sqrt((b-c)/(a-c))
};

struct EllipticData {
  CycleIntegrals cycles;
  double q1{}, q0{};
  double alpha1{}, alpha2{};
  double omega{};
  double omega_imag_residual{};
  cplx tau{};
  double d{};
  double beta1_star{}, beta2_star{};
  cplx u_b_plus{};
  cplx u_c_plus{};
};

namespace geometry {

namespace detail {

inline const GaussLegendre<double>& rule() {
  static const GaussLegendre<double> r(40);
  return r;
}

// int over the gap (c,b) of f(z) |p|^{-1/2}, z = c + (b-c) sin^2(theta),
// theta in [0, theta_hi].
template <class F>
double gap_integral(const GapConfig& cfg, F&& f, double theta_hi = std::numbers::pi / 2) {
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  auto integrand = [&](double th) {
    const double s = std::sin(th), co = std::cos(th);
    const double z = c + (b - c) * s * s;
    const double amz = (a - b) + (b - c) * co * co;
    return 2.0 * f(z) / std::sqrt(amz);
  };
  const double delta = std::sqrt((a - b) / (b - c)) + (std::numbers::pi / 2 - theta_hi);
  return rule().integrate_graded_hi(integrand, 0.0, theta_hi, delta);
}

// int over the band (b,a) of f(z) |p|^{-1/2}, z = b + (a-b) sin^2(theta).
template <class F>
double band_integral(const GapConfig& cfg, F&& f) {
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  auto integrand = [&](double th) {
    const double s = std::sin(th);
    const double z = b + (a - b) * s * s;
    const double zmc = (b - c) + (a - b) * s * s;
    return 2.0 * f(z) / std::sqrt(zmc);
  };
  const double delta = std::sqrt((b - c) / (a - b));
  return rule().integrate_graded(integrand, 0.0, std::numbers::pi / 2, delta);
}

// int_a^x f(w) p(w)^{-1/2} dw, w = a + (x-a) v^2.
template <class F>
double ray_integral(const GapConfig& cfg, double x, F&& f) {
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  const double xa = x - a;
  if (xa == 0) return 0.0;
  const double sq = std::sqrt(xa);
  auto integrand = [&](double v) {
    const double w = a + xa * v * v;
    const double wb = (a - b) + xa * v * v;
    const double wc = (a - c) + xa * v * v;
    return 2.0 * sq * f(w) / std::sqrt(wb * wc);
  };
  const double delta = std::sqrt((a - b) / xa);
  return rule().integrate_graded(integrand, 0.0, 1.0, delta);
}

// Beyond this point g is evaluated as (2/3)x^{3/2} plus a tail integral.
inline double tail_threshold(const GapConfig& cfg, const EllipticData& ed) {
  const double disc = ed.q1 * ed.q1 - 4.0 * ed.q0;
  const double qroot = disc > 0 ? 0.5 * (-ed.q1 + std::sqrt(disc)) : 0.0;
  return std::max({1.0, 2.0 * std::abs(cfg.c), 2.0 * qroot});
}

// x = a is admitted where the quantity has a limit there (u, beta, g).
inline void require_right_of_a(const GapConfig& cfg, double x, const char* what, bool allow_a = true) {
  const bool ok = allow_a ? x >= cfg.a : x > cfg.a;
  if (!ok || !std::isfinite(x))
    throw domain_error(std::string(what) + (allow_a ? ": argument must satisfy x >= a" : ": argument must satisfy x > a"));
}

} // namespace detail

inline double p_of(const GapConfig& cfg, double z) { return (z - cfg.a) * (z - cfg.b) * (z - cfg.c); }

inline double q_of(const EllipticData& ed, double z) { return z * z + ed.q1 * z + ed.q0; }

inline CycleIntegrals cycle_integrals(const GapConfig& cfg) {
  validate(cfg);
  CycleIntegrals ci;
  ci.j0 = -detail::gap_integral(cfg, [](double) { return 1.0; });
  ci.j1 = -detail::gap_integral(cfg, [](double z) { return z; });
  ci.j2 = -detail::gap_integral(cfg, [](double z) { return z * z; });
  ci.i0 = -detail::band_integral(cfg, [](double) { return 1.0; });
  ci.i1 = -detail::band_integral(cfg, [](double z) { return z; });
  ci.i2 = -detail::band_integral(cfg, [](double z) { return z * z; });
  ci.k = std::sqrt((cfg.b - cfg.c) / (cfg.a - cfg.c));
  return ci;
}

/// Roots of (z-a)(z-c) = z-b, smaller first.
inline std::pair<double, double> beta_stars(const GapConfig& cfg) {
  const double bb = cfg.a + cfg.c + 1.0;
  const double cc = cfg.a * cfg.c + cfg.b;
  const double disc = std::sqrt(bb * bb - 4.0 * cc);
  // stable form: both roots negative when bb < 0
  const double big = 0.5 * (bb + std::copysign(disc, bb));
  const double r1 = big, r2 = cc / big;
  return {std::min(r1, r2), std::max(r1, r2)};
}

inline EllipticData elliptic_data(const GapConfig& cfg) {
  validate(cfg);
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  EllipticData ed;
  ed.cycles = cycle_integrals(cfg);
  const CycleIntegrals& ci = ed.cycles;
  const double e1 = a + b + c;
  const double e2 = a * b + a * c + b * c;
  ed.q1 = -0.5 * e1;
  ed.q0 = -(ci.j2 + ed.q1 * ci.j1) / ci.j0;
  ed.alpha1 = 0.5 * e2 - 0.25 * (a * a + b * b + c * c) - 2.0 * ed.q0;
  ed.alpha2 = -(a * a * a + b * b * b + c * c * c - (a + b) * (a + c) * (b + c) + 4.0 * e1 * ed.q0) / 12.0;

  const cplx i0(0, ci.i0), i1(0, ci.i1), i2(0, ci.i2);
  const cplx om = cplx(0, 1.0 / std::numbers::pi) * (i2 + ed.q1 * i1 + ed.q0 * i0);
  ed.omega = om.real();
  ed.omega_imag_residual = om.imag();
  if (std::abs(ed.omega_imag_residual) > 1e-10)
    throw consistency_error("elliptic_data: Omega has imaginary residue above 1e-10");
  ed.tau = i0 / ci.j0;

  const auto [b1, b2] = beta_stars(cfg);
  ed.beta1_star = b1;
  ed.beta2_star = b2;
  // z = c + (b-c) sin^2(theta*) = beta1*
  const double s2 = std::clamp((b1 - c) / (b - c), 0.0, 1.0);
  const double theta_star = std::asin(std::sqrt(s2));
  const double arc = detail::gap_integral(cfg, [](double) { return 1.0; }, theta_star);
  ed.d = arc / (2.0 * std::abs(ci.j0));

  ed.u_b_plus = -0.5 * ed.tau;
  ed.u_c_plus = -0.5 * (1.0 + ed.tau);
  return ed;
}

/// Abel map u(x) = (1/(2 J_0)) int_a^x p^{-1/2} on x > a.
inline double u_map(const GapConfig& cfg, const EllipticData& ed, double x) {
  detail::require_right_of_a(cfg, x, "u_map");
  return detail::ray_integral(cfg, x, [](double) { return 1.0; }) / (2.0 * ed.cycles.j0);
}

inline double u_map(const GapConfig& cfg, double x) { return u_map(cfg, elliptic_data(cfg), x); }

/// ((x-a)(x-c)/(x-b))^{1/4} on x > a.
inline double beta_fn(const GapConfig& cfg, double x) {
  detail::require_right_of_a(cfg, x, "beta_fn");
  return std::sqrt(std::sqrt((x - cfg.a) * (x - cfg.c) / (x - cfg.b)));
}

/// g(x) - (2/3) x^{3/2} on x > a.
inline double g_tail(const GapConfig& cfg, const EllipticData& ed, double x) {
  detail::require_right_of_a(cfg, x, "g_tail", false);
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  const double e2 = a * b + a * c + b * c;
  const double e3 = a * b * c;
  if (x < detail::tail_threshold(cfg, ed)) {
    const double g = detail::ray_integral(cfg, x, [&](double w) { return q_of(ed, w); });
    return g - 2.0 / 3.0 * x * std::sqrt(x);
  }
  // q/sqrt(p) - sqrt(w) = N(w) / (sqrt(p) (q + sqrt(w p)))
  const double A2 = ed.q1 * ed.q1 + 2.0 * ed.q0 - e2;
  const double A1 = 2.0 * ed.q1 * ed.q0 + e3;
  const double A0 = ed.q0 * ed.q0;
  auto integrand = [&](double t) {
    if (t <= 0) return 0.0;
    const double w = x / (t * t);
    const double pw = p_of(cfg, w);
    const double sp = std::sqrt(pw);
    const double n = (A2 * w + A1) * w + A0;
    const double r = n / (sp * (q_of(ed, w) + std::sqrt(w * pw)));
    return r * 2.0 * x / (t * t * t);
  };
  return -detail::rule().integrate(integrand, 0.0, 1.0);
}

/// g(x) = int_a^x q(w) p(w)^{-1/2} dw on x > a.
inline double g_eval(const GapConfig& cfg, const EllipticData& ed, double x) {
  detail::require_right_of_a(cfg, x, "g_eval");
  if (x < detail::tail_threshold(cfg, ed)) return detail::ray_integral(cfg, x, [&](double w) { return q_of(ed, w); });
  return 2.0 / 3.0 * x * std::sqrt(x) + g_tail(cfg, ed, x);
}

/// g(x) - (2/3)x^{3/2} - alpha1 x^{-1/2} - alpha2 x^{-3/2}.
inline double g_residual(const GapConfig& cfg, const EllipticData& ed, double x) {
  return g_tail(cfg, ed, x) - ed.alpha1 / std::sqrt(x) - ed.alpha2 / (x * std::sqrt(x));
}

/// int_c^b q |p|^{-1/2}, zero when q0 is correct.
inline double gap_condition_residual(const GapConfig& cfg, const EllipticData& ed) {
  return detail::gap_integral(cfg, [&](double z) { return q_of(ed, z); });
}

/// Closed forms for the endpoint derivatives of the curve data.
struct ParamDerivatives {
  double domega_db{}, domega_da{};
  cplx dtau_db{}, dtau_da{};
  double dalpha2_db{}, dalpha2_da{};
  double dj0_db{};
  double dq0_db{};
};

inline ParamDerivatives closed_form_derivatives(const GapConfig& cfg, const EllipticData& ed) {
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  const double j0 = ed.cycles.j0;
  const double qa = q_of(ed, a), qb = q_of(ed, b);
  const cplx ipi(0, std::numbers::pi);
  ParamDerivatives d;
  d.domega_db = qb / ((a - b) * (b - c) * j0);
  d.domega_da = -qa / ((a - b) * (a - c) * j0);
  d.dtau_db = -ipi / (j0 * j0 * (a - b) * (b - c));
  d.dtau_da = ipi / (j0 * j0 * (a - b) * (a - c));
  d.dalpha2_db = qb * qb / ((a - b) * (b - c));
  d.dalpha2_da = -qa * qa / ((a - b) * (a - c));
  d.dj0_db = -(ed.cycles.j1 - b * j0) / (2.0 * (a - b) * (b - c));
  d.dq0_db = -0.5 * (b + ed.q1) - qb * d.dj0_db / j0;
  return d;
}

} // namespace geometry

} // namespace airygap

#endif
