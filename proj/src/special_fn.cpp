// SPDX-License-Identifier: Apache-2.0
#include "apwcert/special_fn.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace apwcert::special {

namespace {

constexpr double kPi = 3.14159265358979323846;

// j_l(x) = sum_k (-1)^k x^{l+2k} / (2^k k! (2l+2k+1)!!), used for small x
// where the recurrence has nothing to gain.
double bessel_j_series(int l, double x) {
  double prefac = 1.0; // x^l / (2l+1)!!
  for (int n = 1; n <= l; ++n) prefac *= x / (2 * n + 1);
  double term = prefac, sum = prefac;
  const double x2 = x * x;
  for (int k = 1; k <= 60; ++k) {
    term *= -x2 / (2.0 * k * (2.0 * (l + k) + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_i_series(int l, double x) {
  double prefac = 1.0;
  for (int n = 1; n <= l; ++n) prefac *= x / (2 * n + 1);
  double term = prefac, sum = prefac;
  const double x2 = x * x;
  for (int k = 1; k <= 80; ++k) {
    term *= x2 / (2.0 * k * (2.0 * (l + k) + 1.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

} // namespace

std::vector<double> spherical_bessel_j_upto(int lmax, double x) {
  if (lmax < 0) throw std::invalid_argument("lmax < 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("x must be finite and >= 0");
  std::vector<double> j(lmax + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 0.1) {
    for (int l = 0; l <= lmax; ++l) j[l] = bessel_j_series(l, x);
    return j;
  }
  // Miller downward recurrence with on-the-fly rescaling; normalization by
  // whichever of j_0, j_1 is away from a node. The start index sits well
  // above both lmax and the turning point l ~ x.
  const double big = std::max<double>(lmax, x);
  const int start = static_cast<int>(std::ceil(big + std::sqrt(40.0 * big))) + 20;
  std::vector<double> raw(lmax + 2, 0.0);
  double jp1 = 0.0, jc = 1e-30, scale = 0.0;
  for (int n = start; n >= 1; --n) {
    double jm1 = (2.0 * n + 1.0) / x * jc - jp1;
    jp1 = jc;
    jc = jm1;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp1 *= 1e-250;
      scale += 250.0 * std::log(10.0);
      for (auto& v : raw)
        if (v != 0.0) v *= 1e-250;
    }
    if (n - 1 <= lmax + 1) raw[n - 1] = jc;
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  double ratio;
  if (std::abs(j0) >= std::abs(j1))
    ratio = j0 / raw[0];
  else
    ratio = j1 / raw[1];
  (void)scale; // folded into raw by the rescaling above
  for (int l = 0; l <= lmax; ++l) j[l] = raw[l] * ratio;
  return j;
}

double spherical_bessel_j(int l, double x) {
  if (l < 0) throw std::invalid_argument("l < 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  // Series when the first term ratio is < 1/4: fast and cancellation-free.
  if (x < 0.1 || x * x < 0.5 * (2.0 * l + 3.0)) return bessel_j_series(l, x);
  return spherical_bessel_j_upto(l, x)[l];
}

ScaledBessel modified_spherical_bessel_i_scaled(int l, double x) {
  if (l < 0) throw std::invalid_argument("l < 0");
  if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
  ScaledBessel out;
  if (x == 0.0) {
    out.mantissa = (l == 0) ? 1.0 : 0.0;
    return out;
  }
  if (x < 0.1) {
    out.mantissa = bessel_i_series(l, x);
    return out;
  }
  // Downward recurrence for ratios: i_{n-1} = i_{n+1} + (2n+1)/x i_n is
  // stable downward; normalize against i_0 = sinh(x)/x.
  const double big = std::max<double>(l, x);
  const int start = static_cast<int>(std::ceil(big + std::sqrt(40.0 * big))) + 20;
  double ip1 = 0.0, ic = 1e-30;
  double target = 0.0;
  for (int n = start; n >= 1; --n) {
    double im1 = ip1 + (2.0 * n + 1.0) / x * ic;
    ip1 = ic;
    ic = im1;
    if (std::abs(ic) > 1e250) {
      ic *= 1e-250;
      ip1 *= 1e-250;
      target *= 1e-250;
    }
    if (n - 1 == l) target = ic;
  }
  // i_0(x) = sinh(x)/x, in log form for large x.
  if (x > 30.0) {
    // log i_0 = x + log((1 - e^{-2x}) / (2x))
    out.log_scale = x + std::log((1.0 - std::exp(-2.0 * x)) / (2.0 * x));
    out.mantissa = target / ic;
  } else {
    out.mantissa = target / ic * (std::sinh(x) / x);
    out.log_scale = 0.0;
  }
  return out;
}

double modified_spherical_bessel_i(int l, double x) {
  return modified_spherical_bessel_i_scaled(l, x).value();
}

double normalized_assoc_legendre(int l, int m, double x) {
  if (m < 0 || m > l) throw std::invalid_argument("need 0 <= m <= l");
  // P̄_mm = (-1)^m sqrt((2m+1)/(4π) * (2m-1)!!/(2m)!!) (1-x²)^{m/2}
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  if (m > 0) {
    const double s2 = std::max(0.0, (1.0 - x) * (1.0 + x));
    const double s = std::sqrt(s2);
    for (int k = 1; k <= m; ++k)
      pmm *= -s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  }
  if (l == m) return pmm;
  double pm1 = pmm;
  double p = x * std::sqrt(2.0 * m + 3.0) * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
    const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(m) * m) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    const double next = a * (x * p - b * pm1);
    pm1 = p;
    p = next;
  }
  return p;
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("need |m| <= l");
  const int am = std::abs(m);
  const double pbar = normalized_assoc_legendre(l, am, std::cos(theta));
  std::complex<double> y = pbar * std::exp(std::complex<double>(0.0, am * phi));
  if (m < 0) {
    y = std::conj(y);
    if (am % 2 != 0) y = -y;
  }
  return y;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("n < 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int mhalf = (n + 1) / 2;
  for (int i = 1; i <= mhalf; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

SphereQuadrature build_sphere_quadrature(int order) {
  if (order < 0 || order > 100) throw std::invalid_argument("order out of range");
  SphereQuadrature q;
  q.order = order;
  const int ntheta = order + 1;
  const int nphi = 2 * order + 1;
  const GaussRule gl = gauss_legendre(ntheta);
  q.nodes.reserve(static_cast<size_t>(ntheta) * nphi);
  q.weights.reserve(static_cast<size_t>(ntheta) * nphi);
  const double wphi = 2.0 * kPi / nphi;
  for (int it = 0; it < ntheta; ++it) {
    const double theta = std::acos(gl.nodes[it]);
    for (int ip = 0; ip < nphi; ++ip) {
      q.nodes.push_back({theta, 2.0 * kPi * ip / nphi});
      q.weights.push_back(gl.weights[it] * wphi);
    }
  }
  return q;
}

} // namespace apwcert::special
