#ifndef AIRYGAP_FREDHOLM_HPP
#define AIRYGAP_FREDHOLM_HPP

// Nystrom evaluation of log det(I - K) for the Airy and sine kernels on a
// finite union of intervals. The matrix is symmetrized with square-root
// weights, factored with partial pivoting, and everything (nodes, kernel,
// factorization) is carried out in long double. The extra precision matters
// for determinants of size e^-40 and below, where 1 - lambda_max of the
// discretized operator is around 1e-8.

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "airygap/errors.hpp"
#include "airygap/geometry.hpp"
#include "airygap/quadrature.hpp"
#include "airygap/specfun/airy.hpp"

namespace airygap {

enum class KernelKind { airy, sine };

inline const char* to_string(KernelKind k) { return k == KernelKind::airy ? "airy" : "sine"; }

struct Interval {
  double lo{};
  double hi{};
};

struct LogDetResult {
  double log_det{};
  int n_nodes{};            // per interval, at the final refinement
  double truncation_point{}; // upper cutoff used for a semi-infinite interval, 0 if none
  double est_error{};       // |L(n) - L(n/2)|
  std::vector<std::pair<int, double>> history; // (n, L(n)) for every n evaluated
  bool converged{};
};

struct DetOptions {
  int n_initial = 80;
  int n_max = 640;
  double target = 1e-10;
  double tail_tol = 1e-14;
  bool refine = true;
};

namespace fredholm {

using real_t = long double;

/// Nodes-and-weights rule; the same as the library-wide Gauss-Legendre rule.
template <class Real = double>
QuadratureRule<Real> gauss_legendre(int n, Real lo, Real hi) {
  return airygap::gauss_legendre<Real>(n, lo, hi);
}

/// K^Ai(z, z'). Near the diagonal (|z - z'| < 1e-6) the average of the two
/// diagonal values is used, which is accurate to O((z - z')^2).
template <class Real = double>
Real airy_kernel(Real z, Real zp) {
  const auto u = specfun::airy<Real>(z);
  const auto v = specfun::airy<Real>(zp);
  const Real du = u.ai_prime * u.ai_prime - z * u.ai * u.ai;
  if (std::abs(z - zp) < Real(1e-6)) {
    const Real dv = v.ai_prime * v.ai_prime - zp * v.ai * v.ai;
    return (z == zp) ? du : (du + dv) / 2;
  }
  return (u.ai * v.ai_prime - u.ai_prime * v.ai) / (z - zp);
}

/// sin(x - y) / (pi (x - y)), 1/pi on the diagonal.
template <class Real = double>
Real sine_kernel(Real x, Real y) {
  const Real d = x - y;
  if (d == 0) return 1 / std::numbers::pi_v<Real>;
  return std::sin(d) / (std::numbers::pi_v<Real> * d);
}

/// Upper cutoff T for an interval (lo, +inf): chosen so that
/// (4/3) T^{3/2} = ln(1/tol) + 23, which bounds the trace of the Airy kernel
/// beyond T by roughly tol * 1e-10.
inline double truncate_infinite(const GapConfig& cfg, double tol = 1e-14) {
  if (!(tol > 0)) throw domain_error("truncate_infinite: tol must be positive");
  const double rhs = std::log(1.0 / tol) + 23.0;
  double t = std::pow(0.75 * std::max(rhs, 1.0), 2.0 / 3.0);
  const double lo = cfg.s * cfg.a;
  if (t <= lo) t = lo + 1.0;
  return t;
}

namespace detail {

inline int max_nodes_from_env(int fallback) {
  if (const char* env = std::getenv("AIRYGAP_MAX_NODES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 4) return static_cast<int>(std::min<long>(v, fallback));
  }
  return fallback;
}

// Returns log det(I - A); throws if the determinant is not positive.
inline double lu_logdet(std::vector<real_t>& m, std::size_t n) {
  real_t logabs = 0;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    real_t best = std::abs(m[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const real_t v = std::abs(m[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) throw numeric_failure("nystrom_logdet: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      sign = -sign;
    }
    const real_t pivot = m[k * n + k];
    if (pivot < 0) sign = -sign;
    logabs += std::log(std::abs(pivot));
    real_t* rowk = &m[k * n];
    for (std::size_t i = k + 1; i < n; ++i) {
      real_t* rowi = &m[i * n];
      const real_t f = rowi[k] / pivot;
      if (f == 0) continue;
      rowi[k] = f;
      for (std::size_t j = k + 1; j < n; ++j) rowi[j] -= f * rowk[j];
    }
  }
  if (sign < 0) throw numeric_failure("nystrom_logdet: determinant is not positive");
  return static_cast<double>(logabs);
}

} // namespace detail

/// log det(I - K) with n_per[i] Gauss-Legendre nodes on intervals[i]. With
/// block_diagonal set, kernel entries coupling different intervals are
/// dropped.
inline double logdet_fixed(KernelKind kind, const std::vector<Interval>& intervals, const std::vector<int>& n_per,
                           bool block_diagonal = false) {
  if (n_per.size() != intervals.size()) throw domain_error("nystrom_logdet: one node count per interval required");
  std::vector<real_t> x, sw;
  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (!(iv.hi > iv.lo)) continue;
    if (n_per[i] < 1) throw domain_error("nystrom_logdet: node count must be positive");
    const auto rule = airygap::gauss_legendre<real_t>(n_per[i], iv.lo, iv.hi);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      x.push_back(rule.nodes[k]);
      sw.push_back(std::sqrt(rule.weights[k]));
      block.push_back(i);
    }
  }
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  std::vector<real_t> m(n * n, 0);
  if (kind == KernelKind::airy) {
    std::vector<real_t> ai(n), aip(n), diag(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = specfun::airy<real_t>(x[i]);
      ai[i] = v.ai;
      aip[i] = v.ai_prime;
      diag[i] = v.ai_prime * v.ai_prime - x[i] * v.ai * v.ai;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (block_diagonal && block[i] != block[j]) continue;
        real_t k;
        const real_t dz = x[i] - x[j];
        if (i == j) k = diag[i];
        else if (std::abs(dz) < real_t(1e-6)) k = (diag[i] + diag[j]) / 2;
        else k = (ai[i] * aip[j] - aip[i] * ai[j]) / dz;
        m[i * n + j] = -sw[i] * k * sw[j];
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (block_diagonal && block[i] != block[j]) continue;
        m[i * n + j] = -sw[i] * sine_kernel<real_t>(x[i], x[j]) * sw[j];
      }
  }
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] += 1;
  return detail::lu_logdet(m, n);
}

/// log det(I - K) with n nodes per interval, est_error from n/2 nodes.
inline LogDetResult nystrom_logdet(KernelKind kind, const std::vector<Interval>& intervals, int n,
                                   bool block_diagonal = false) {
  if (n < 4) throw domain_error("nystrom_logdet: need n >= 4");
  LogDetResult r;
  const std::vector<int> full(intervals.size(), n), half(intervals.size(), n / 2);
  const double lh = logdet_fixed(kind, intervals, half, block_diagonal);
  const double lf = logdet_fixed(kind, intervals, full, block_diagonal);
  r.history = {{n / 2, lh}, {n, lf}};
  r.log_det = lf;
  r.n_nodes = n;
  r.est_error = std::abs(lf - lh);
  r.converged = true;
  return r;
}

/// Node doubling from opt.n_initial until est_error < opt.target or the
/// node cap (opt.n_max, further limited by AIRYGAP_MAX_NODES) is reached.
inline LogDetResult logdet_refined(KernelKind kind, const std::vector<Interval>& intervals, const DetOptions& opt) {
  const int cap = detail::max_nodes_from_env(opt.n_max);
  int n = std::min(std::max(opt.n_initial, 4), std::max(cap, 4));
  LogDetResult r = nystrom_logdet(kind, intervals, n);
  if (!opt.refine) {
    r.converged = r.est_error < opt.target;
    return r;
  }
  while (r.est_error >= opt.target && 2 * n <= cap) {
    n *= 2;
    const double prev = r.log_det;
    const double l = logdet_fixed(kind, intervals, std::vector<int>(intervals.size(), n));
    r.history.emplace_back(n, l);
    r.log_det = l;
    r.n_nodes = n;
    r.est_error = std::abs(l - prev);
  }
  r.converged = r.est_error < opt.target;
  return r;
}

/// log P(no eigenvalue in s((c,b) u (a,inf))) for the Airy process.
inline LogDetResult det_two_gap(const GapConfig& cfg, const DetOptions& opt = {}) {
  validate(cfg);
  const double t = truncate_infinite(cfg, opt.tail_tol);
  const std::vector<Interval> iv{{cfg.s * cfg.c, cfg.s * cfg.b}, {cfg.s * cfg.a, t}};
  LogDetResult r = logdet_refined(KernelKind::airy, iv, opt);
  r.truncation_point = t;
  return r;
}

/// log det(I - K^Ai) on (-s, inf).
inline LogDetResult det_one_gap_airy(double s, const DetOptions& opt = {}) {
  if (!(s >= 0) || !std::isfinite(s)) throw domain_error("det_one_gap_airy: s must be non-negative");
  GapConfig probe;
  probe.a = -1;
  probe.s = s;
  const double t = truncate_infinite(probe, opt.tail_tol);
  LogDetResult r = logdet_refined(KernelKind::airy, {{-s, t}}, opt);
  r.truncation_point = t;
  return r;
}

/// log det(I - K^sine) on (-t, t).
inline LogDetResult det_gap_sine(double t, const DetOptions& opt = {}) {
  if (!(t > 0) || !std::isfinite(t)) throw domain_error("det_gap_sine: t must be positive");
  return logdet_refined(KernelKind::sine, {{-t, t}}, opt);
}

} // namespace fredholm

} // namespace airygap

#endif
