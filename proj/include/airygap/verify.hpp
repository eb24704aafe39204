#ifndef AIRYGAP_VERIFY_HPP
#define AIRYGAP_VERIFY_HPP

// Pass/fail checks for the identities satisfied by the curve data and theta
// functions, and for the agreement between determinants and their
// expansions. Exact-identity checks compare a residual against a small
// tolerance; asymptotic gates compare errors across a range of s.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "airygap/asymptotics.hpp"
#include "airygap/fredholm.hpp"
#include "airygap/geometry.hpp"
#include "airygap/specfun/elliptic.hpp"
#include "airygap/specfun/theta.hpp"

namespace airygap {

enum class CheckKind { exact, asymptotic };

struct CheckReport {
  std::string name;
  double residual{};
  double tolerance{};
  bool passed{};
  std::string context;
  CheckKind kind{CheckKind::exact};
};

namespace verify {

inline std::string describe(const GapConfig& cfg) {
  std::ostringstream os;
  os.precision(15);
  os << "a=" << cfg.a << " b=" << cfg.b << " c=" << cfg.c << " s=" << cfg.s;
  return os.str();
}

inline CheckReport make_report(std::string name, double residual, double tol, std::string context,
                               CheckKind kind = CheckKind::exact) {
  CheckReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tol;
  r.passed = std::isfinite(residual) && residual <= tol;
  r.context = std::move(context);
  r.kind = kind;
  return r;
}

/// Deterministic sampler of well-separated configurations:
/// a in (-2,-0.3), a-b and b-c in (0.3, 2).
class ConfigSampler {
public:
  explicit ConfigSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }

  GapConfig next() {
    GapConfig cfg;
    cfg.a = uniform(-2.0, -0.3);
    cfg.b = cfg.a - uniform(0.3, 2.0);
    cfg.c = cfg.b - uniform(0.3, 2.0);
    cfg.s = 1.0;
    return cfg;
  }

private:
  std::mt19937_64 rng_;
};

/// theta_k(0)^4 against J0^2 (gap length)/pi^2 for k = 3, 4, 2.
inline std::vector<CheckReport> check_theta_constants(const GapConfig& cfg, const EllipticData& ed,
                                                      double tol = 1e-10) {
  const specfun::ThetaContext ctx(ed.tau);
  const double scale = ed.cycles.j0 * ed.cycles.j0 / (std::numbers::pi * std::numbers::pi);
  const std::string ctxs = describe(cfg);
  auto res = [&](int j, double len) { return std::abs(std::pow(specfun::theta(j, 0.0, ctx), 4) - scale * len); };
  return {make_report("theta3^4 = J0^2 (a-c)/pi^2", res(3, cfg.a - cfg.c), tol, ctxs),
          make_report("theta4^4 = J0^2 (a-b)/pi^2", res(4, cfg.a - cfg.b), tol, ctxs),
          make_report("theta2^4 = J0^2 (b-c)/pi^2", res(2, cfg.b - cfg.c), tol, ctxs)};
}

/// I1 J0 - J1 I0 = 2 pi i.
inline CheckReport check_riemann_relation(const GapConfig& cfg, const EllipticData& ed, double tol = 1e-10) {
  const auto& ci = ed.cycles;
  const cplx i0(0, ci.i0), i1(0, ci.i1);
  const cplx lhs = i1 * ci.j0 - ci.j1 * i0;
  return make_report("I1 J0 - J1 I0 = 2 pi i", std::abs(lhs - cplx(0, 2.0 * std::numbers::pi)), tol, describe(cfg));
}

/// det P^inf(z;s) for real z > a (the constant left factor N0 has det 1).
inline double pinfty_det(const GapConfig& cfg, const EllipticData& ed, double s, double z) {
  const specfun::ThetaContext ctx(ed.tau);
  auto t3 = [&](double x) { return specfun::theta(3, cplx(x, 0), ctx).real(); };
  const double u = geometry::u_map(cfg, ed, z);
  const double be = geometry::beta_fn(cfg, z);
  const double w = s * std::sqrt(s) * ed.omega;
  const double d = ed.d;
  const double pre = t3(0.0) / t3(w);
  const double t11 = pre * t3(u + w + d) / t3(u + d);
  const double t12 = pre * t3(u - w - d) / t3(u - d);
  const double t21 = pre * t3(u + w - d) / t3(u - d);
  const double t22 = pre * t3(u - w + d) / t3(u + d);
  const double np = (be + 1.0 / be) / 2.0;
  const double nm = (be - 1.0 / be) / 2.0;
  // N12 N21 = -((beta - 1/beta)/(2i))^2 = nm^2
  return t11 * t22 * np * np - t12 * t21 * nm * nm;
}

inline std::vector<double> default_pinfty_samples(const GapConfig& cfg, const EllipticData& ed) {
  std::vector<double> z;
  for (double off : {0.05, 0.5, 2.0, 5.0, 20.0, 200.0})
    if (std::abs(cfg.a + off - ed.beta2_star) > 1e-3) z.push_back(cfg.a + off);
  return z;
}

inline CheckReport check_pinfty_det(const GapConfig& cfg, const EllipticData& ed, double s,
                                    const std::vector<double>& z_samples, double tol = 1e-9) {
  double worst = 0;
  for (double z : z_samples) worst = std::max(worst, std::abs(pinfty_det(cfg, ed, s, z) - 1.0));
  std::ostringstream os;
  os << describe(cfg) << " det_s=" << s << " samples=" << z_samples.size();
  return make_report("det P^inf = 1", worst, tol, os.str());
}

/// (theta3'/theta3 - theta1'/theta1) at u_+(b) + d and at d.
inline std::vector<CheckReport> check_logderiv_identities(const GapConfig& cfg, const EllipticData& ed,
                                                          double tol = 1e-9) {
  const specfun::ThetaContext ctx(ed.tau);
  auto f = [&](cplx z) { return specfun::theta_logderiv(3, z, ctx) - specfun::theta_logderiv(1, z, ctx); };
  const double j0 = ed.cycles.j0;
  const std::string ctxs = describe(cfg);
  return {make_report("(log theta3 - log theta1)'(u+(b)+d) = J0", std::abs(f(ed.u_b_plus + ed.d) - j0), tol, ctxs),
          make_report("(log theta3 - log theta1)'(d) = J0 (a-c)", std::abs(f(cplx(ed.d, 0)) - j0 * (cfg.a - cfg.c)),
                      tol, ctxs)};
}

/// Central differences of Omega, tau, alpha2 in b and a against closed forms.
inline std::vector<CheckReport> check_param_derivatives(const GapConfig& cfg, double tol = 1e-6) {
  const EllipticData ed = geometry::elliptic_data(cfg);
  const auto cf = geometry::closed_form_derivatives(cfg, ed);
  const double hb = 1e-5 * std::abs(cfg.b);
  const double ha = 1e-5 * std::abs(cfg.a);
  GapConfig bp = cfg, bm = cfg, ap = cfg, am = cfg;
  bp.b += hb;
  bm.b -= hb;
  ap.a += ha;
  am.a -= ha;
  const EllipticData ebp = geometry::elliptic_data(bp), ebm = geometry::elliptic_data(bm);
  const EllipticData eap = geometry::elliptic_data(ap), eam = geometry::elliptic_data(am);
  const std::string ctxs = describe(cfg);
  auto rel = [](double fd, double exact) { return std::abs(fd - exact) / std::max(1.0, std::abs(exact)); };
  auto crel = [](cplx fd, cplx exact) { return std::abs(fd - exact) / std::max(1.0, std::abs(exact)); };
  return {
      make_report("dOmega/db", rel((ebp.omega - ebm.omega) / (2 * hb), cf.domega_db), tol, ctxs),
      make_report("dtau/db", crel((ebp.tau - ebm.tau) / (2 * hb), cf.dtau_db), tol, ctxs),
      make_report("dOmega/da", rel((eap.omega - eam.omega) / (2 * ha), cf.domega_da), tol, ctxs),
      make_report("dtau/da", crel((eap.tau - eam.tau) / (2 * ha), cf.dtau_da), tol, ctxs),
      make_report("dalpha2/db", rel((ebp.alpha2 - ebm.alpha2) / (2 * hb), cf.dalpha2_db), tol, ctxs),
      make_report("dalpha2/da", rel((eap.alpha2 - eam.alpha2) / (2 * ha), cf.dalpha2_da), tol, ctxs),
  };
}

/// Sign and size bounds on q at the endpoints and the K, E bounds. The
/// residual is the largest violation (0 when all hold).
inline CheckReport check_q_signs_and_bounds(const GapConfig& cfg, const EllipticData& ed) {
  using geometry::q_of;
  const double a = cfg.a, b = cfg.b, c = cfg.c;
  const double k = ed.cycles.k;
  const auto ke = specfun::elliptic_ke(k);
  const double kp = std::sqrt(1.0 - k * k);
  double worst = 0;
  bool strict = true;
  auto violation = [&](double margin) { // margin > 0 means the bound holds
    if (!(margin > 0)) strict = false;
    worst = std::max(worst, -margin);
  };
  violation(-q_of(ed, a));
  violation(-(a - b) * (b - c) / 3.0 - q_of(ed, b));
  violation(q_of(ed, c) - (a - c) * (b - c) / 3.0);
  violation(ke.big_e / ke.big_k - kp);
  violation(std::numbers::pi / 2.0 / std::sqrt(kp) - ke.big_k);
  CheckReport r = make_report("q signs, q bounds, E/K and K bounds", worst, 0.0, describe(cfg));
  r.passed = r.passed && strict;
  return r;
}

/// Pairwise agreement of the three forms of the two-gap expansion.
inline CheckReport check_form_equivalence(const GapConfig& cfg, double tol = 1e-10) {
  const EllipticData ed = geometry::elliptic_data(cfg);
  const AsymptoticConstants k = asymptotics::constants(cfg, ed);
  const double t1 = asymptotics::two_gap_asym(cfg, ed, k, AsymForm::theorem1).total;
  const double t2 = asymptotics::two_gap_asym(cfg, ed, k, AsymForm::remark1).total;
  const double t3 = asymptotics::two_gap_asym(cfg, ed, k, AsymForm::remark3).total;
  const double res = std::max({std::abs(t1 - t2), std::abs(t1 - t3), std::abs(t2 - t3)});
  return make_report("expansion forms agree", res, tol, describe(cfg));
}

struct Theorem1Point {
  double s{};
  double log_det{};
  double est_error{};
  int n_nodes{};
  double asym_total{};
  double error{};
};

struct Theorem1Report {
  CheckReport report;
  std::vector<Theorem1Point> points;
};

/// e(s) = |log det - expansion| over increasing s; passes when e decreases
/// strictly and e(s_max) < gate. chi_shift perturbs the constant term.
inline Theorem1Report check_theorem1(GapConfig cfg, const std::vector<double>& s_list, double gate = 0.05,
                                     double chi_shift = 0.0, const DetOptions& opt = {}) {
  Theorem1Report out;
  bool decreasing = true;
  for (double s : s_list) {
    cfg.s = s;
    const EllipticData ed = geometry::elliptic_data(cfg);
    const auto br = asymptotics::two_gap_asym(cfg, ed, AsymForm::theorem1);
    const LogDetResult ld = fredholm::det_two_gap(cfg, opt);
    Theorem1Point p{s, ld.log_det, ld.est_error, ld.n_nodes, br.total + chi_shift, 0.0};
    p.error = std::abs(p.log_det - p.asym_total);
    if (!out.points.empty() && !(p.error < out.points.back().error)) decreasing = false;
    out.points.push_back(p);
  }
  const double emax = out.points.empty() ? 0.0 : out.points.back().error;
  std::ostringstream os;
  os.precision(6);
  os << describe(cfg) << " gate=" << gate << " chi_shift=" << chi_shift << " errors:";
  for (const auto& p : out.points) os << ' ' << p.error;
  out.report = make_report("two-gap expansion vs determinant", emax, gate, os.str(), CheckKind::asymptotic);
  out.report.passed = out.report.passed && decreasing;
  return out;
}

struct SeparationPoint {
  double s{};
  GapConfig cfg;
  LogDetResult two_gap, sine, airy;
  double residual{};
};

/// |log P(sJ) - log det_sine(-t0 sqrt|c|, t0 sqrt|c|) - log det_Ai(-t1, inf)|
inline SeparationPoint separation_residual(double s, double t0, double t1, double c, const DetOptions& opt = {}) {
  SeparationPoint p;
  p.s = s;
  p.cfg = asymptotics::separation_config(c, s, t0, t1);
  p.two_gap = fredholm::det_two_gap(p.cfg, opt);
  p.sine = fredholm::det_gap_sine(t0 * std::sqrt(std::abs(c)), opt);
  p.airy = fredholm::det_one_gap_airy(t1, opt);
  p.residual = std::abs(p.two_gap.log_det - p.sine.log_det - p.airy.log_det);
  return p;
}

struct SeparationReport {
  CheckReport report;
  std::vector<SeparationPoint> points;
};

/// Residual decreasing in s, and below gate at the largest s.
inline SeparationReport check_separation(const std::vector<double>& s_list, double t0, double t1, double c,
                                         double gate = 0.02, const DetOptions& opt = {}) {
  SeparationReport out;
  bool decreasing = true;
  for (double s : s_list) {
    out.points.push_back(separation_residual(s, t0, t1, c, opt));
    const auto n = out.points.size();
    if (n > 1 && !(out.points[n - 1].residual < out.points[n - 2].residual)) decreasing = false;
  }
  std::ostringstream os;
  os.precision(6);
  os << "c=" << c << " t0=" << t0 << " t1=" << t1 << " gate=" << gate << " residuals:";
  for (const auto& p : out.points) os << " s=" << p.s << ':' << p.residual;
  const double last = out.points.empty() ? 0.0 : out.points.back().residual;
  out.report = make_report("separation of gaps", last, gate, os.str(), CheckKind::asymptotic);
  out.report.passed = out.report.passed && decreasing;
  return out;
}

/// All exact-identity checks on n_configs sampled configurations.
inline std::vector<CheckReport> run_identity_suite(std::uint64_t seed, int n_configs = 50) {
  ConfigSampler sampler(seed);
  std::vector<CheckReport> out;
  for (int i = 0; i < n_configs; ++i) {
    const GapConfig cfg = sampler.next();
    const double s = sampler.uniform(0.5, 5.0);
    const EllipticData ed = geometry::elliptic_data(cfg);
    for (auto& r : check_theta_constants(cfg, ed)) out.push_back(std::move(r));
    out.push_back(check_riemann_relation(cfg, ed));
    out.push_back(check_pinfty_det(cfg, ed, s, default_pinfty_samples(cfg, ed)));
    for (auto& r : check_logderiv_identities(cfg, ed)) out.push_back(std::move(r));
    out.push_back(check_q_signs_and_bounds(cfg, ed));
  }
  return out;
}

/// Derivative identities on sampled configurations.
inline std::vector<CheckReport> run_derivative_suite(std::uint64_t seed, int n_configs = 5) {
  ConfigSampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<CheckReport> out;
  for (int i = 0; i < n_configs; ++i)
    for (auto& r : check_param_derivatives(sampler.next())) out.push_back(std::move(r));
  return out;
}

/// Form equivalence on sampled (configuration, s).
inline std::vector<CheckReport> run_form_suite(std::uint64_t seed, int n_configs = 20) {
  ConfigSampler sampler(seed ^ 0x2545f4914f6cdd1dULL);
  std::vector<CheckReport> out;
  for (int i = 0; i < n_configs; ++i) {
    GapConfig cfg = sampler.next();
    cfg.s = sampler.uniform(0.5, 6.0);
    out.push_back(check_form_equivalence(cfg));
  }
  return out;
}

} // namespace verify

} // namespace airygap

#endif
