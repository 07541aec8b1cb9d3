// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "apwcert/special_fn.hpp"

namespace apwcert::sobolev {

using Complex = std::complex<double>;

// Finite spherical-harmonic expansion on a sphere of radius R.
struct SphereFunction {
  double R = 1.0;
  int l_eval = 0;
  std::vector<Complex> coeffs; // lm-indexed, size (l_eval+1)^2

  static SphereFunction zero(double R, int l_eval);
  Complex& at(int l, int m) { return coeffs[special::lm_index(l, m)]; }
  Complex at(int l, int m) const { return coeffs[special::lm_index(l, m)]; }
  Complex evaluate(double theta, double phi) const;

  // JSON array [[l, m, re, im], ...]; import/export.
  std::string to_json() const;
  static SphereFunction from_json(const std::string& text, double R);
};

// H^s(∂B_R) through Laplace-Beltrami weights:
// norm = ( R^2 sum_lm (1 + l(l+1)/R^2)^s |g_lm|^2 )^{1/2}.
double boundary_sobolev_norm(const SphereFunction& g, double s);

// Function on the ball of radius R with per-(l,m) closed-form radial
// profiles: either c1 r^l + c2 r^{l+2} (power pair, the Z1 family) or
// amp * i_l(r)/i_l(R) (modified Bessel, the (-Δ+1)-harmonic family).
struct BallFunction {
  enum class Kind { PowerPair, ModifiedBessel };
  Kind kind = Kind::ModifiedBessel;
  double R = 1.0;
  int l_eval = 0;
  std::vector<Complex> amp;  // Bessel amplitude, or c1
  std::vector<Complex> amp2; // c2 (power pair only)

  Complex evaluate(double r, double theta, double phi) const;
  SphereFunction trace() const;
  SphereFunction inward_normal_derivative() const; // -d/dr at R
};

// The unique weak solution of -Δu + u = 0 on the ball with trace g
// (per mode: g_lm i_l(r)/i_l(R) Y_lm).
BallFunction orthocomplement_extension(const SphereFunction& g);

// Full H^2(ball) norm: ||u||^2 + ||∇u||^2 + sum_ij ||∂_i∂_j u||^2, reduced
// per (l,m) mode to radial quadratures (the mode Gram of the Hessian pairing
// is diagonal by rotational invariance).
double h2_ball_norm(const BallFunction& u);

// Per-l ratio ||extension(Y_l0)||_{H^2} / ||Y_l0||_{H^{3/2}} on the ball of
// radius R; the computable face of the trace-estimate constant.
struct H2BoundProfile {
  double max_ratio = 0.0;
  std::vector<double> per_l;
};
H2BoundProfile h2_bound_constant(double R, int l_eval);

// Right inverse of T1 = (trace, inward normal derivative): per mode the
// power pair with value g0_lm and inward-normal derivative g1_lm at R.
BallFunction trace_right_inverse_Z1(const SphereFunction& g0, const SphereFunction& g1);

// J of the matching condition: flips the sign of the odd-order trace
// components, here (g0, g1) -> (g0, -g1).
std::pair<SphereFunction, SphereFunction> j_flip(const SphereFunction& g0, const SphereFunction& g1);

// ---- layered decomposition (concentric-shell geometry) ----

// Radially symmetric datum on one shell: value and derivative.
struct RadialDatum {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

// One hole-filled component v_alpha: the residual on its own shell
// (inner_boundary, outer_boundary) and a C^1-matched quadratic fill
// c1 + c2 r^2 on (0, inner_boundary).
struct LayeredComponent {
  int alpha = 0;            // 1-based, outermost first
  double outer_boundary = 0; // +inf for the outermost region
  double inner_boundary = 0; // 0 when the region has no hole
  std::function<double(double)> on_region;
  bool has_fill = false;
  double fill_c1 = 0.0;
  double fill_c2 = 0.0;

  double evaluate(double r) const;
};

// Inputs ordered outermost first; radii strictly increasing, radii.size() ==
// values.size() - 1. Region alpha occupies (radii[N-alpha-1], radii[N-alpha])
// with radii[-1] := 0 implied. Throws GeometryUnsupported for invalid radii.
std::vector<LayeredComponent> layered_decomposition(const std::vector<RadialDatum>& values,
                                                    const std::vector<double>& radii);

// ---- continuous surrogate (zero-jump correction construction) ----

struct Surrogate {
  std::vector<BallFunction> corrections; // Φ_alpha, supported in sphere alpha
  double dist_upper = 0.0;               // broken-H^2 norm of Φ
  double max_trace_residual = 0.0;       // max |trace(Φ_alpha) + jump_alpha|
};

// jumps[alpha] = exterior-minus-interior trace difference on sphere alpha.
// Ψ = u - Φ has zero jumps; dist_upper bounds dist(u, Y).
Surrogate continuous_surrogate(const std::vector<SphereFunction>& jumps);

} // namespace apwcert::sobolev
