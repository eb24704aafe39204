#ifndef AIRYGAP_ASYMPTOTICS_HPP
#define AIRYGAP_ASYMPTOTICS_HPP

// Large-s expansion of the two-gap log-determinant, term by term, in three
// algebraically equivalent forms:
//
//   theorem1  -alpha2 s^3 - (1/2) log s + log(theta3(w)/theta3(0)) + chi
//   remark1   -alpha2 s^3 - (1/2) log s + log theta3(w) + chi1
//   remark3   -alpha2* s^3 - (1/2) log s + log theta3(w/tau; -1/tau) + chi1*
//
// with w = s^{3/2} Omega and theta functions of modulus tau. The one-gap
// Airy and sine expansions and the separation-regime quantity D are here as
// well.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "airygap/errors.hpp"
#include "airygap/geometry.hpp"
#include "airygap/specfun/theta.hpp"
#include "airygap/specfun/zeta.hpp"

namespace airygap {

enum class AsymForm { theorem1, remark1, remark3 };

inline const char* to_string(AsymForm f) {
  switch (f) {
  case AsymForm::theorem1: return "theorem1";
  case AsymForm::remark1: return "remark1";
  default: return "remark3";
  }
}

struct AsymptoticConstants {
  double chi{};
  double chi1{};
  double chi1_star{};
  double alpha2_star{};
  double alpha2_star_imag{};
  double c_sine{};
  double chi_airy{};
  double zeta_p{};
  double chi_cross_residual{}; // chi1 - (chi - log theta3(0))
};

struct AsymptoticBreakdown {
  AsymForm form{};
  double s{};
  double cubic_term{};
  double log_term{};
  double theta_phase{};
  double theta_term{};
  double constant_term{};
  double total{};
};

namespace asymptotics {

namespace detail {

inline double log_abs_qqq(const GapConfig& cfg, const EllipticData& ed) {
  using geometry::q_of;
  return std::log(std::abs(q_of(ed, cfg.a) * q_of(ed, cfg.b) * q_of(ed, cfg.c)));
}

// Real part of log theta3(z;tau) for real z and imaginary tau, where theta3
// is positive.
inline double log_theta3_real(double z, cplx tau) {
  const specfun::ThetaContext ctx(tau);
  const cplx v = specfun::log_theta3(cplx(z, 0), ctx);
  return v.real();
}

} // namespace detail

inline AsymptoticConstants constants(const GapConfig& cfg, const EllipticData& ed) {
  AsymptoticConstants k;
  k.zeta_p = specfun::zeta_prime_minus1();
  k.c_sine = specfun::c_sine();
  k.chi_airy = specfun::chi_airy();
  const double lq = detail::log_abs_qqq(cfg, ed);
  const double pi = std::numbers::pi;
  k.chi = 0.25 * std::log(cfg.a - cfg.c) - 0.125 * (std::log(2.0) + lq) + k.c_sine + k.chi_airy;
  k.chi1 = -0.5 * std::log(std::abs(ed.cycles.j0) / pi) - 0.125 * lq + 4.0 * k.zeta_p;
  k.chi1_star = -0.5 * std::log(std::abs(ed.cycles.i0) / pi) - 0.125 * lq + 4.0 * k.zeta_p;
  const cplx a2s = ed.alpha2 + cplx(0, pi) * ed.omega * ed.omega / ed.tau;
  k.alpha2_star = a2s.real();
  k.alpha2_star_imag = a2s.imag();
  if (std::abs(k.alpha2_star_imag) > 1e-12)
    throw consistency_error("constants: alpha2* has imaginary part above 1e-12");
  k.chi_cross_residual = k.chi1 - (k.chi - detail::log_theta3_real(0.0, ed.tau));
  if (std::abs(k.chi_cross_residual) > 1e-10)
    throw consistency_error("constants: chi and chi1 disagree through theta3(0)^4 = J0^2 (a-c)/pi^2");
  return k;
}

inline AsymptoticBreakdown two_gap_asym(const GapConfig& cfg, const EllipticData& ed, const AsymptoticConstants& k,
                                        AsymForm form) {
  const double s = cfg.s;
  if (!(s > 0)) throw domain_error("two_gap_asym: s must be positive");
  AsymptoticBreakdown r;
  r.form = form;
  r.s = s;
  r.theta_phase = s * std::sqrt(s) * ed.omega;
  r.log_term = -0.5 * std::log(s);
  switch (form) {
  case AsymForm::theorem1:
    r.cubic_term = -ed.alpha2 * s * s * s;
    r.theta_term = detail::log_theta3_real(r.theta_phase, ed.tau) - detail::log_theta3_real(0.0, ed.tau);
    r.constant_term = k.chi;
    break;
  case AsymForm::remark1:
    r.cubic_term = -ed.alpha2 * s * s * s;
    r.theta_term = detail::log_theta3_real(r.theta_phase, ed.tau);
    r.constant_term = k.chi1;
    break;
  case AsymForm::remark3: {
    r.cubic_term = -k.alpha2_star * s * s * s;
    const cplx tau_d = -1.0 / ed.tau;
    const specfun::ThetaContext ctx(tau_d);
    r.theta_term = specfun::log_theta3(r.theta_phase / ed.tau, ctx).real();
    r.constant_term = k.chi1_star;
    break;
  }
  }
  r.total = r.cubic_term + r.log_term + r.theta_term + r.constant_term;
  return r;
}

inline AsymptoticBreakdown two_gap_asym(const GapConfig& cfg, const EllipticData& ed, AsymForm form) {
  return two_gap_asym(cfg, ed, constants(cfg, ed), form);
}

/// -s^3/12 - (1/8) log s + chi_Airy
inline double tw_asym(double s) {
  if (!(s > 0)) throw domain_error("tw_asym: s must be positive");
  return -s * s * s / 12.0 - 0.125 * std::log(s) + specfun::chi_airy();
}

/// -t^2/2 - (1/4) log t + c_sine
inline double sine_asym(double t) {
  if (!(t > 0)) throw domain_error("sine_asym: t must be positive");
  return -0.5 * t * t - 0.25 * std::log(t) + specfun::c_sine();
}

/// Endpoints of the separation regime: a = -t1/s, b = c + 2 t0 / s^{3/2}.
inline GapConfig separation_config(double c, double s, double t0, double t1) {
  if (!(s > 0) || !(t0 > 0) || !(t1 > 0) || !(c < 0)) throw domain_error("separation: need s, t0, t1 > 0 and c < 0");
  GapConfig cfg;
  cfg.c = c;
  cfg.b = c + 2.0 * t0 / (s * std::sqrt(s));
  cfg.a = -t1 / s;
  cfg.s = s;
  if (!(cfg.b < cfg.a)) throw domain_error("separation: regime requires b < a; increase s");
  validate(cfg);
  return cfg;
}

struct SeparationD {
  GapConfig cfg;
  double exact{};
  double expansion{};
  double difference{};
};

/// -alpha2 s^3 + log theta3(s^{3/2} Omega; tau) - (1/2) log|J0| - (1/8) log|q(a)q(b)q(c)|
inline double d_form(const GapConfig& cfg, const EllipticData& ed) {
  const double s = cfg.s;
  return -ed.alpha2 * s * s * s + detail::log_theta3_real(s * std::sqrt(s) * ed.omega, ed.tau) -
         0.5 * std::log(std::abs(ed.cycles.j0)) - 0.125 * detail::log_abs_qqq(cfg, ed);
}

inline double d_expansion(double c, double s, double t0, double t1) {
  const double ac = std::abs(c);
  return -ac * t0 * t0 / 2.0 - 0.25 * std::log(std::sqrt(ac) * t0) - t1 * t1 * t1 / 12.0 - 0.125 * std::log(t1) +
         0.5 * std::log(s) + 0.125 * std::log(2.0) - 0.5 * std::log(std::numbers::pi);
}

inline SeparationD separation_D(double c, double s, double t0, double t1) {
  SeparationD r;
  r.cfg = separation_config(c, s, t0, t1);
  const EllipticData ed = geometry::elliptic_data(r.cfg);
  r.exact = d_form(r.cfg, ed);
  r.expansion = d_expansion(c, s, t0, t1);
  r.difference = r.exact - r.expansion;
  return r;
}

/// d/db of d_form assembled from the closed-form endpoint derivatives.
inline double d_form_db(const GapConfig& cfg, const EllipticData& ed) {
  using geometry::q_of;
  const double s = cfg.s;
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  const auto der = geometry::closed_form_derivatives(cfg, ed);
  const double w = s * std::sqrt(s) * ed.omega;
  const specfun::ThetaContext ctx(ed.tau);
  const auto th = specfun::theta_scaled(3, cplx(w, 0), ctx);
  // heat equation: d theta3 / d tau = theta3'' / (4 pi i)
  const cplx dlog_dz = th.d[1] / th.d[0];
  const cplx dlog_dtau = th.d[2] / th.d[0] / cplx(0, 4.0 * std::numbers::pi);
  const double dtheta = (dlog_dz * (s * std::sqrt(s) * der.domega_db) + dlog_dtau * der.dtau_db).real();
  // d q(z)/db at fixed z, then total derivative of q(b)
  const double dq1 = -0.5;
  auto dq_fixed = [&](double z) { return dq1 * z + der.dq0_db; };
  const double dqa = dq_fixed(a);
  const double dqb = (2.0 * b + ed.q1) + dq_fixed(b);
  const double dqc = dq_fixed(c);
  const double dlogq = dqa / q_of(ed, a) + dqb / q_of(ed, b) + dqc / q_of(ed, c);
  return -s * s * s * der.dalpha2_db + dtheta - 0.5 * der.dj0_db / ed.cycles.j0 - 0.125 * dlogq;
}

} // namespace asymptotics

} // namespace airygap

#endif
