#ifndef AIRYGAP_SPECFUN_AIRY_HPP
#define AIRYGAP_SPECFUN_AIRY_HPP

// Airy function Ai and its derivative on the real line.
//
// Four regions:
//   -2 <= x <= 1        Maclaurin series (a Taylor step from the origin)
//   -x_sw <= x < -2     Taylor stepping of y'' = x y from the origin,
//                       step length at most 1/2
//   1 < x <= x_sw       K-Bessel integral, trapezoid rule in t
//   |x| > x_sw          asymptotic expansions with the u_k, v_k coefficients
//
// x_sw is where the asymptotic series first reaches the working precision,
// (1.5*zeta_min)^(2/3) with zeta_min = (1 - ln eps)/2 + 1/2. That is about
// 9.3 for double and 10.6 for long double.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace airygap::specfun {

template <class Real = double>
struct AiryValue {
  Real x{};
  Real ai{};
  Real ai_prime{};
};

namespace detail {

template <class Real>
constexpr Real airy_ai0() {
  return Real(0.355028053887817239260063186004183176L);
}

template <class Real>
constexpr Real airy_aip0() {
  return Real(-0.258819403792806798405183560189203963L);
}

template <class Real>
Real airy_switch() {
  const Real zeta_min = (-std::log(std::numeric_limits<Real>::epsilon()) + 2) / 2;
  return std::pow(Real(1.5) * zeta_min, Real(2) / 3);
}

// One Taylor step of y'' = x y from x0 with data (y, yp) over length h.
template <class Real>
void airy_taylor_step(Real x0, Real h, Real& y, Real& yp) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real am1 = 0; // a_{n-1}
  Real a0 = y;  // a_n
  Real a1 = yp; // a_{n+1}
  Real hp = 1;  // h^n
  Real sum = a0;
  Real dsum = a1;
  const Real scale = std::abs(y) + std::abs(h * yp) + eps;
  int small = 0;
  for (int n = 0; n < 400; ++n) {
    const Real a2 = (x0 * a0 + am1) / (Real(n + 2) * Real(n + 1));
    hp *= h;
    const Real term = a1 * hp;          // a_{n+1} h^{n+1}
    const Real dterm = Real(n + 2) * a2 * hp; // (n+2) a_{n+2} h^{n+1}
    sum += term;
    dsum += dterm;
    if (std::abs(term) <= eps * scale * Real(0.01) && std::abs(dterm * h) <= eps * scale * Real(0.01)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
    am1 = a0;
    a0 = a1;
    a1 = a2;
  }
  y = sum;
  yp = dsum;
}

template <class Real>
AiryValue<Real> airy_taylor(Real x) {
  Real y = airy_ai0<Real>();
  Real yp = airy_aip0<Real>();
  const Real hmax = Real(0.5);
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(x) / hmax)));
  const Real h = x / Real(steps);
  Real x0 = 0;
  for (int i = 0; i < steps; ++i) {
    airy_taylor_step(x0, h, y, yp);
    x0 = (i + 1 == steps) ? x : x0 + h;
  }
  return {x, y, yp};
}

// S_nu = int_0^inf exp(-zeta (cosh t - 1)) cosh(nu t) dt by the trapezoid
// rule, for nu = 1/3 and 2/3 at once.
template <class Real>
void airy_bessel_sums(Real zeta, Real& s13, Real& s23) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real budget = -std::log(eps) + 3;
  const Real d = std::min(Real(1.2), 1 / std::sqrt(zeta));
  const Real h = 2 * std::numbers::pi_v<Real> * d / (budget + zeta * (1 - std::cos(d)) + 1);
  s13 = Real(0.5);
  s23 = Real(0.5);
  for (int k = 1; k < 10000; ++k) {
    const Real t = Real(k) * h;
    const Real arg = zeta * (std::cosh(t) - 1);
    if (arg - Real(2) / 3 * t > budget) break;
    const Real e = std::exp(-arg);
    s13 += e * std::cosh(t / 3);
    s23 += e * std::cosh(2 * t / 3);
  }
  s13 *= h;
  s23 *= h;
}

template <class Real>
AiryValue<Real> airy_bessel(Real x) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real sqrt3 = std::sqrt(Real(3));
  const Real zeta = Real(2) / 3 * x * std::sqrt(x);
  Real s13, s23;
  airy_bessel_sums(zeta, s13, s23);
  const Real e = std::exp(-zeta);
  const Real ai = std::sqrt(x / 3) / pi * e * s13;
  const Real aip = -x / (pi * sqrt3) * e * s23;
  return {x, ai, aip};
}

// Sums sum_k sign_k c_k z^{-k} of the u and v coefficient sequences,
// truncated at the smallest term.
template <class Real>
struct AiryAsymSums {
  Real u_even{}, u_odd{}, v_even{}, v_odd{}; // alternating, for the oscillatory side
  Real u_all{}, v_all{};                     // (-1)^k, for the decaying side
};

template <class Real>
AiryAsymSums<Real> airy_asym_sums(Real zeta, bool oscillatory) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  AiryAsymSums<Real> r;
  Real u = 1;  // u_k
  Real zp = 1; // zeta^{-k}
  r.u_even = 1;
  r.v_even = 1;
  r.u_all = 1;
  r.v_all = 1;
  Real prev = std::numeric_limits<Real>::infinity();
  for (int k = 1; k < 200; ++k) {
    u *= Real(6 * k - 5) * Real(6 * k - 3) * Real(6 * k - 1) / (Real(2 * k - 1) * Real(216) * Real(k));
    const Real v = -u * Real(6 * k + 1) / Real(6 * k - 1);
    zp /= zeta;
    const Real tu = u * zp;
    const Real tv = v * zp;
    const Real mag = std::max(std::abs(tu), std::abs(tv));
    if (mag > prev) break;
    prev = mag;
    if (oscillatory) {
      // (-1)^m u_{2m} and (-1)^m u_{2m+1}
      const int m = k / 2;
      const Real sgn = (m % 2 == 0) ? Real(1) : Real(-1);
      if (k % 2 == 0) {
        r.u_even += sgn * tu;
        r.v_even += sgn * tv;
      } else {
        r.u_odd += sgn * tu;
        r.v_odd += sgn * tv;
      }
    } else {
      const Real sgn = (k % 2 == 0) ? Real(1) : Real(-1);
      r.u_all += sgn * tu;
      r.v_all += sgn * tv;
    }
    if (mag < eps * Real(1e-3)) break;
  }
  return r;
}

template <class Real>
AiryValue<Real> airy_asym_positive(Real x) {
  const Real sqrt_pi = std::sqrt(std::numbers::pi_v<Real>);
  const Real zeta = Real(2) / 3 * x * std::sqrt(x);
  const auto s = airy_asym_sums(zeta, false);
  const Real x14 = std::sqrt(std::sqrt(x));
  const Real e = std::exp(-zeta);
  return {x, e / (2 * sqrt_pi * x14) * s.u_all, -x14 * e / (2 * sqrt_pi) * s.v_all};
}

template <class Real>
AiryValue<Real> airy_asym_negative(Real x) {
  const Real sqrt_pi = std::sqrt(std::numbers::pi_v<Real>);
  const Real z = -x;
  const Real xi = Real(2) / 3 * z * std::sqrt(z);
  const auto s = airy_asym_sums(xi, true);
  const Real z14 = std::sqrt(std::sqrt(z));
  const Real rt2 = std::sqrt(Real(2));
  const Real sx = std::sin(xi), cx = std::cos(xi);
  const Real c = (cx + sx) / rt2; // cos(xi - pi/4)
  const Real sn = (sx - cx) / rt2; // sin(xi - pi/4)
  const Real ai = (c * s.u_even + sn * s.u_odd) / (sqrt_pi * z14);
  const Real aip = z14 / sqrt_pi * (sn * s.v_even - c * s.v_odd);
  return {x, ai, aip};
}

} // namespace detail

/// Ai(x) and Ai'(x) for finite real x. Relative accuracy a small multiple
/// of machine epsilon on x >= 0; on x < 0 the error is relative to the
/// envelope |x|^{-1/4}/sqrt(pi) (resp. |x|^{1/4}/sqrt(pi) for Ai').
template <class Real = double>
AiryValue<Real> airy(Real x) {
  if (std::isnan(x)) return {x, x, x};
  const Real xsw = detail::airy_switch<Real>();
  if (x > xsw) {
    return detail::airy_asym_positive(x);
  }
  if (x > 1) return detail::airy_bessel(x);
  if (x >= -xsw) return detail::airy_taylor(x);
  return detail::airy_asym_negative(x);
}

} // namespace airygap::specfun

#endif
