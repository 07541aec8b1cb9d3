// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace apwcert::special {

// Regular spherical Bessel function j_l(x), accurate to ~1e-12 relative for
// l <= 200, 0 <= x <= 100. Downward (Miller) recurrence normalized against
// j_0/j_1; power series near the origin.
double spherical_bessel_j(int l, double x);

// j_0..j_lmax at one argument in a single downward pass.
std::vector<double> spherical_bessel_j_upto(int lmax, double x);

// Modified spherical Bessel function of the first kind i_l(x), regular at 0.
double modified_spherical_bessel_i(int l, double x);

// Scaled representation i_l(x) = mantissa * exp(log_scale). log_scale is 0
// for x <= 30; for larger x the mantissa stays O(1).
struct ScaledBessel {
  double mantissa = 0.0;
  double log_scale = 0.0;
  double value() const { return mantissa * std::exp(log_scale); }
};
ScaledBessel modified_spherical_bessel_i_scaled(int l, double x);

// Orthonormal complex spherical harmonic, Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

// Normalized associated Legendre P̄_lm(x) such that
// Y_lm(θ,φ) = P̄_lm(cos θ) e^{imφ} for m >= 0.
double normalized_assoc_legendre(int l, int m, double x);

// Gauss-Legendre nodes/weights on (-1, 1).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Product quadrature on the unit sphere: Gauss-Legendre in cos θ, uniform in
// φ. Exact for products Y_lm conj(Y_l'm') with l, l' <= order.
struct SphereQuadrature {
  struct Node {
    double theta;
    double phi;
  };
  std::vector<Node> nodes;
  std::vector<double> weights; // sum to 4π
  int order = 0;
};
SphereQuadrature build_sphere_quadrature(int order);

// Flat index into (l,m) coefficient arrays, l <= l_eval, |m| <= l.
inline int lm_index(int l, int m) { return l * (l + 1) + m; }
inline int lm_count(int l_eval) { return (l_eval + 1) * (l_eval + 1); }

} // namespace apwcert::special
