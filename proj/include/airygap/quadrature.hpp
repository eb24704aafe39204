#ifndef AIRYGAP_QUADRATURE_HPP
#define AIRYGAP_QUADRATURE_HPP

// Gauss-Legendre rules and the composite integrators built on them.
//
// All geometry integrals in this library have their square-root endpoint
// singularities removed analytically before they reach these routines, so an
// integrand handed in here is analytic on the closed interval. What remains
// is the possibility of a complex singularity sitting close to one endpoint
// (for instance when two branch points nearly collide). integrate_graded()
// handles that by geometric panel grading toward the endpoint.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "airygap/errors.hpp"

namespace airygap {

template <class Real>
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
  Real lo{};
  Real hi{};

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

// n-point Gauss-Legendre on [-1,1], nodes increasing. Newton on the
// three-term recurrence, carried out in Real so long double rules are
// accurate to long double precision.
template <class Real>
QuadratureRule<Real> reference_gauss_legendre(int n) {
  if (n < 1) throw domain_error("gauss_legendre: need at least one node");
  QuadratureRule<Real> rule;
  rule.lo = Real(-1);
  rule.hi = Real(1);
  rule.nodes.assign(static_cast<std::size_t>(n), Real(0));
  rule.weights.assign(static_cast<std::size_t>(n), Real(0));
  const Real pi = std::numbers::pi_v<Real>;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root
    Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 1;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p0 = 1;
        p1 = x;
      }
      dp = Real(n) * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 2 * eps) {
        // one more evaluation of the derivative at the converged root
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) {
          p0 = 1;
          p1 = x;
        }
        dp = Real(n) * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    const Real w = 2 / ((1 - x * x) * dp * dp);
    const auto hi_idx = static_cast<std::size_t>(n - 1 - i);
    const auto lo_idx = static_cast<std::size_t>(i);
    rule.nodes[hi_idx] = x;
    rule.nodes[lo_idx] = -x;
    rule.weights[hi_idx] = w;
    rule.weights[lo_idx] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = Real(0);
  return rule;
}

} // namespace detail

/// n-point Gauss-Legendre rule mapped to (lo, hi). Exact for polynomials of
/// degree up to 2n-1.
template <class Real = double>
QuadratureRule<Real> gauss_legendre(int n, Real lo, Real hi) {
  if (!(lo < hi)) throw domain_error("gauss_legendre: require lo < hi");
  QuadratureRule<Real> rule = detail::reference_gauss_legendre<Real>(n);
  const Real half = (hi - lo) / 2;
  const Real mid = lo + half;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  rule.lo = lo;
  rule.hi = hi;
  return rule;
}

// Reusable fixed-order integrator. Holds one reference rule so repeated
// panel integrals do not recompute nodes.
template <class Real>
class GaussLegendre {
public:
  explicit GaussLegendre(int n) : ref_(detail::reference_gauss_legendre<Real>(n)) {}

  int order() const noexcept { return static_cast<int>(ref_.size()); }

  template <class F>
  Real integrate(F&& f, Real lo, Real hi) const {
    const Real half = (hi - lo) / 2;
    const Real mid = lo + half;
    Real sum = 0;
    for (std::size_t i = 0; i < ref_.size(); ++i) sum += ref_.weights[i] * f(mid + half * ref_.nodes[i]);
    return sum * half;
  }

  // Integral over [lo, hi] of an integrand whose nearest singularity lies at
  // distance ~delta from lo. Panels [lo, lo+delta], then widths doubling, so
  // every panel sees the singularity at least a panel-width away.
  template <class F>
  Real integrate_graded(F&& f, Real lo, Real hi, Real delta) const {
    const Real length = hi - lo;
    if (!(delta > 0) || delta >= length / 4) return integrate(f, lo, hi);
    Real sum = 0;
    Real a = lo;
    Real width = delta;
    while (a < hi) {
      Real b = a + width;
      if (b > hi || hi - b < width) b = hi;
      sum += integrate(f, a, b);
      a = b;
      width *= 2;
    }
    return sum;
  }

  // Same, with the singularity near hi.
  template <class F>
  Real integrate_graded_hi(F&& f, Real lo, Real hi, Real delta) const {
    auto g = [&](Real t) { return f(lo + hi - t); };
    return integrate_graded(g, lo, hi, delta);
  }

private:
  QuadratureRule<Real> ref_;
};

} // namespace airygap

#endif
