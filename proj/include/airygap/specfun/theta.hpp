#ifndef AIRYGAP_SPECFUN_THETA_HPP
#define AIRYGAP_SPECFUN_THETA_HPP

// Jacobi theta functions with period 1 in z and quasi-period tau:
//
//   theta3(z) = sum_m exp(2 pi i m z + pi i tau m^2)
//   theta4(z) = theta3(z + 1/2)
//   theta2(z) = exp(-pi i z + pi i tau/4) theta3(z - tau/2)
//   theta1(z) = theta2(z - 1/2)
//
// theta3 is evaluated after moving z into the strip |Im z| <= Im(tau)/2
// with theta3(w + n tau) = exp(-2 pi i n w - pi i n^2 tau) theta3(w). The
// exponential factor is kept separately as a complex logarithm so values far
// from the fundamental domain neither overflow nor underflow.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "airygap/errors.hpp"

namespace airygap::specfun {

using cplx = std::complex<double>;

class ThetaContext {
public:
  explicit ThetaContext(cplx tau, int max_terms = 64, double tol = 1e-17)
      : tau_(tau), max_terms_(max_terms), tol_(tol) {
    if (!(tau.imag() > 0)) throw domain_error("theta: Im tau must be positive");
    if (max_terms < 1 || !(tol > 0)) throw domain_error("theta: invalid truncation parameters");
    nome_ = std::exp(cplx(0, std::numbers::pi) * tau);
  }

  cplx tau() const noexcept { return tau_; }
  cplx nome() const noexcept { return nome_; }
  int max_terms() const noexcept { return max_terms_; }
  double tol() const noexcept { return tol_; }

private:
  cplx tau_;
  cplx nome_;
  int max_terms_;
  double tol_;
};

/// exp(log_scale) * d[k] is the k-th z-derivative, k = 0, 1, 2.
struct ScaledTheta {
  cplx log_scale{};
  std::array<cplx, 3> d{};

  cplx value(int order = 0) const { return std::exp(log_scale) * d[static_cast<std::size_t>(order)]; }
};

namespace detail {

// theta3 and its first two derivatives for |Im w| <= Im(tau)/2.
inline std::array<cplx, 3> theta3_series(cplx w, const ThetaContext& ctx) {
  const double pi = std::numbers::pi;
  const cplx ipi(0, pi);
  const double qabs = std::abs(ctx.nome());
  std::array<cplx, 3> s{cplx(1), cplx(0), cplx(0)};
  for (int m = 1;; ++m) {
    const double bound = std::pow(qabs, double(m) * m - m) * std::pow(2 * pi * m, 2);
    if (bound < ctx.tol()) break;
    if (m > ctx.max_terms())
      throw numeric_failure("theta: series did not reach tolerance within max_terms");
    const cplx base = ipi * ctx.tau() * double(m) * double(m);
    const cplx ep = std::exp(base + 2.0 * ipi * double(m) * w);
    const cplx em = std::exp(base - 2.0 * ipi * double(m) * w);
    const cplx k = 2.0 * ipi * double(m);
    s[0] += ep + em;
    s[1] += k * (ep - em);
    s[2] += k * k * (ep + em);
  }
  return s;
}

// Multiply by exp(f(z)) with f linear, f' = slope.
inline void apply_linear_factor(ScaledTheta& t, cplx log_factor, cplx slope) {
  t.log_scale += log_factor;
  const auto d = t.d;
  t.d[1] = d[1] + slope * d[0];
  t.d[2] = d[2] + 2.0 * slope * d[1] + slope * slope * d[0];
}

inline ScaledTheta theta3_scaled(cplx z, const ThetaContext& ctx) {
  const cplx ipi(0, std::numbers::pi);
  const cplx tau = ctx.tau();
  const double n = std::round(z.imag() / tau.imag());
  cplx w = z - n * tau;
  w -= std::round(w.real());
  ScaledTheta t;
  t.d = theta3_series(w, ctx);
  if (n != 0) apply_linear_factor(t, -2.0 * ipi * n * w - ipi * n * n * tau, -2.0 * ipi * n);
  return t;
}

} // namespace detail

/// theta_j(z) with derivatives, in log-scaled form.
inline ScaledTheta theta_scaled(int j, cplx z, const ThetaContext& ctx) {
  const cplx ipi(0, std::numbers::pi);
  switch (j) {
  case 3:
    return detail::theta3_scaled(z, ctx);
  case 4:
    return detail::theta3_scaled(z + 0.5, ctx);
  case 2: {
    ScaledTheta t = detail::theta3_scaled(z - 0.5 * ctx.tau(), ctx);
    detail::apply_linear_factor(t, -ipi * z + ipi * ctx.tau() / 4.0, -ipi);
    return t;
  }
  case 1:
    return theta_scaled(2, z - 0.5, ctx);
  default:
    throw domain_error("theta: index must be 1, 2, 3 or 4");
  }
}

inline cplx theta(int j, cplx z, const ThetaContext& ctx) { return theta_scaled(j, z, ctx).value(0); }

/// order-th derivative in z of theta_j, order in {0, 1, 2}.
inline cplx theta_deriv(int j, int order, cplx z, const ThetaContext& ctx) {
  if (order < 0 || order > 2) throw domain_error("theta_deriv: order must be 0, 1 or 2");
  return theta_scaled(j, z, ctx).value(order);
}

/// log theta3(z), principal branch of the reduced factor.
inline cplx log_theta3(cplx z, const ThetaContext& ctx) {
  const ScaledTheta t = detail::theta3_scaled(z, ctx);
  return t.log_scale + std::log(t.d[0]);
}

/// theta_j'(z)/theta_j(z).
inline cplx theta_logderiv(int j, cplx z, const ThetaContext& ctx) {
  const ScaledTheta t = theta_scaled(j, z, ctx);
  return t.d[1] / t.d[0];
}

} // namespace airygap::specfun

#endif
