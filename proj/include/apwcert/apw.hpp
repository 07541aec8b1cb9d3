// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "apwcert/geometry.hpp"
#include "apwcert/radial.hpp"
#include "apwcert/special_fn.hpp"

namespace apwcert::apw {

using geometry::MuffinTinGeometry;
using geometry::Vec3;
using Complex = std::complex<double>;

// Rayleigh coefficients of the plane wave e^{iq.x} on the sphere of radius R
// centered at `center`: trace = sum c_lm Y_lm with
// c_lm = 4 pi i^l j_l(|q|R) conj(Y_lm(q_hat)) e^{iq.center}.
std::vector<Complex> rayleigh_coefficients(const Vec3& q, const Vec3& center, double R, int l_eval);

// Coefficient-space tail sum_{l > l_eval} (2l+1) 4 pi j_l(|q|R)^2
// (the truncation remainder of sum_lm |c_lm|^2).
double rayleigh_tail_sq(const Vec3& q, double R, int l_eval);

// Radial data of one sphere at one basis energy: regular solutions chi_l for
// l <= l_max, the smooth factors R_l(r) = chi_l(r)/r at R, and the radial
// integrals the secular assembly needs.
struct SphereBasisData {
  double R = 0.0;
  int l_max = 0;
  double E = 0.0;
  std::vector<radial::RadialSolution> chi; // l = 0..l_max
  std::vector<double> Rl_at_R;             // chi_l(R)/R
  std::vector<double> norm_l;              // int_0^R chi^2 dr
  std::vector<double> kin_l;               // int (chi' - chi/r)^2 + l(l+1) chi^2/r^2 dr
  std::vector<double> pot_l;               // int V chi^2 dr
};

// Builds the per-sphere radial table; rethrows a radial node at R as
// RadialNodeAtR (the APW asymptote problem, never silently regularized).
std::shared_ptr<const SphereBasisData> build_sphere_basis(const radial::RadialPotential& pot, int l_max, double E,
                                                          double R, int n_grid = 1500);

// A_lm = 4 pi i^l j_l(|q|R) conj(Y_lm(q_hat)) / R_l(R); the e^{iq.center}
// phase is carried separately by the ApwFunction.
std::vector<Complex> apw_matching_coefficients(const Vec3& q, const SphereBasisData& basis, int l_max);

// One APW basis function: plane wave e^{i(k+G).x} in the interstitial region,
// matched truncated expansion e^{iq.center} sum A_lm R_l(r) Y_lm inside each
// sphere.
struct ApwFunction {
  Vec3 k = Vec3::Zero();
  Vec3 G = Vec3::Zero();
  double E = 0.0;
  int l_max = 0;
  std::shared_ptr<const MuffinTinGeometry> geom;
  std::vector<std::vector<Complex>> coeffs; // per sphere, lm-indexed
  std::vector<std::shared_ptr<const SphereBasisData>> radial;

  Vec3 q() const { return k + G; }
};

ApwFunction make_apw_function(std::shared_ptr<const MuffinTinGeometry> geom,
                              const std::vector<std::shared_ptr<const SphereBasisData>>& radial, const Vec3& k,
                              const Vec3& G, int l_max);

// Spherical-harmonic coefficients of the trace difference
// (exterior plane wave) - (interior expansion) on sphere alpha.
struct BoundaryJump {
  size_t alpha = 0;
  double R = 0.0;
  int l_eval = 0;
  std::vector<Complex> g;   // lm-indexed, zero for l <= l_max by construction
  double tail_coeff_sq = 0; // coefficient-space tail beyond l_eval
};

BoundaryJump boundary_jump(const ApwFunction& f, size_t alpha, int l_eval);

// Pointwise evaluation; sphere-boundary points evaluate the interior
// expansion. Throws OutOfCell outside the closed cell.
Complex evaluate_apw(const ApwFunction& f, const Vec3& x);

} // namespace apwcert::apw
