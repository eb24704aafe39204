#ifndef AIRYGAP_SPECFUN_ZETA_HPP
#define AIRYGAP_SPECFUN_ZETA_HPP

#include <cmath>

namespace airygap::specfun {

namespace detail {

// zeta'(-1) = 1/12 - ln A, with the Glaisher constant from the
// Euler-Maclaurin form of sum_{k<=n} k ln k.
inline double compute_zeta_prime_minus1() {
  constexpr int n = 30;
  // B_{2j} for j = 2..8
  constexpr long double bern[] = {-1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                                  -691.0L / 2730, 7.0L / 6, -3617.0L / 510};
  long double s = 0;
  for (int k = 2; k <= n; ++k) s += k * std::log(static_cast<long double>(k));
  const long double nn = n;
  const long double ln = std::log(nn);
  long double log_a = s - (nn * nn / 2 + nn / 2 + 1.0L / 12) * ln + nn * nn / 4;
  for (int j = 2; j <= 8; ++j) {
    const long double denom = 2.0L * j * (2 * j - 1) * (2 * j - 2);
    log_a += bern[j - 2] / denom * std::pow(nn, static_cast<long double>(2 - 2 * j));
  }
  return static_cast<double>(1.0L / 12 - log_a);
}

} // namespace detail

/// zeta'(-1). Computed on first use and cached.
inline double zeta_prime_minus1() {
  static const double value = detail::compute_zeta_prime_minus1();
  return value;
}

/// (1/12) ln 2 + 3 zeta'(-1)
inline double c_sine() { return std::log(2.0) / 12.0 + 3.0 * zeta_prime_minus1(); }

/// (1/24) ln 2 + zeta'(-1)
inline double chi_airy() { return std::log(2.0) / 24.0 + zeta_prime_minus1(); }

} // namespace airygap::specfun

#endif
