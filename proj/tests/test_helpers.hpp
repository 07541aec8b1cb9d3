// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

// Independent oracles for the test suite. These deliberately avoid the
// library's own code paths.
namespace oracle {

// Truncated power series of j_l, n_terms terms.
inline double bessel_j_series(int l, double x, int n_terms) {
  double prefac = 1.0;
  for (int n = 1; n <= l; ++n) prefac *= x / (2 * n + 1);
  double term = prefac, sum = prefac;
  for (int k = 1; k < n_terms; ++k) {
    term *= -x * x / (2.0 * k * (2.0 * (l + k) + 1.0));
    sum += term;
  }
  return sum;
}

// Truncated power series of i_l.
inline double bessel_i_series(int l, double x, int n_terms) {
  double prefac = 1.0;
  for (int n = 1; n <= l; ++n) prefac *= x / (2 * n + 1);
  double term = prefac, sum = prefac;
  for (int k = 1; k < n_terms; ++k) {
    term *= x * x / (2.0 * k * (2.0 * (l + k) + 1.0));
    sum += term;
  }
  return sum;
}

// Associated Legendre P_l^m with Condon-Shortley phase by the classical
// unnormalized recurrence, then normalized; small l only.
inline std::complex<double> spherical_harmonic_recurrence(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double x = std::cos(theta);
  double pmm = 1.0;
  const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
  double fact = 1.0;
  for (int i = 1; i <= am; ++i) {
    pmm *= -fact * somx2;
    fact += 2.0;
  }
  double plm;
  if (l == am) {
    plm = pmm;
  } else {
    double pmmp1 = x * (2.0 * am + 1.0) * pmm;
    if (l == am + 1) {
      plm = pmmp1;
    } else {
      double pll = 0.0;
      for (int ll = am + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + am - 1.0) * pmm) / (ll - am);
        pmm = pmmp1;
        pmmp1 = pll;
      }
      plm = pll;
    }
  }
  double lognorm = std::log((2.0 * l + 1.0) / (4.0 * 3.14159265358979323846));
  for (int k = l - am + 1; k <= l + am; ++k) lognorm -= std::log(static_cast<double>(k));
  const double norm = std::sqrt(std::exp(lognorm));
  std::complex<double> y = norm * plm * std::exp(std::complex<double>(0.0, am * phi));
  if (m < 0) {
    y = std::conj(y);
    if (am % 2 != 0) y = -y;
  }
  return y;
}

// Deterministic RNG for all randomized suites.
inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

} // namespace oracle
