#ifndef AIRYGAP_SPECFUN_ELLIPTIC_HPP
#define AIRYGAP_SPECFUN_ELLIPTIC_HPP

// Arithmetic-geometric mean and the complete elliptic integrals K, E.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "airygap/errors.hpp"

namespace airygap::specfun {

struct EllipticKE {
  double k{};
  double big_k{};
  double big_e{};
};

/// Common limit of a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n).
/// Symmetric in its arguments; both must be positive.
inline double agm(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0)) throw domain_error("agm: arguments must be positive");
  if (alpha > beta) std::swap(alpha, beta);
  for (int n = 0; n < 64; ++n) {
    if (beta - alpha <= 1e-15 * beta) break;
    const double a = 0.5 * (alpha + beta);
    const double g = std::sqrt(alpha * beta);
    alpha = std::min(a, g);
    beta = std::max(a, g);
  }
  return 0.5 * (alpha + beta);
}

/// K(k) and E(k) for 0 <= k < 1.
inline EllipticKE elliptic_ke(double k) {
  if (!(k >= 0) || !(k < 1)) throw domain_error("elliptic_ke: modulus must lie in [0,1)");
  // a_0 = 1, b_0 = k', c_0 = k; E/K = 1 - sum 2^{n-1} c_n^2
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  // c_{n+1} = (a_n - b_n)/2 = c_n^2 / (4 a_{n+1}), free of cancellation
  for (int n = 0; n < 64; ++n) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = c * c / (4.0 * an);
    a = an;
    b = bn;
    pow2 *= 2.0;
    const double term = pow2 * c * c;
    sum += term;
    if (term <= 1e-17 * sum && std::abs(a - b) <= 4e-16 * a) break;
  }
  const double big_k = std::numbers::pi / (2.0 * 0.5 * (a + b));
  return {k, big_k, big_k * (1.0 - sum)};
}

} // namespace airygap::specfun

#endif
