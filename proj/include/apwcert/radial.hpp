// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace apwcert::radial {

// Spherically symmetric potential inside one muffin-tin sphere of radius `a`.
// Either a constant well (V = -depth for r < a) or a tabulated
// profile on a strictly increasing grid over (0, a].
struct RadialPotential {
  enum class Kind { ConstantWell, Tabulated };
  Kind kind = Kind::ConstantWell;
  double depth = 0.0; // ConstantWell: V(r) = -depth
  double a = 1.0;
  std::vector<double> grid;   // Tabulated only
  std::vector<double> values; // Tabulated only

  static RadialPotential constant_well(double depth, double a);
  static RadialPotential free_space(double a);
  static RadialPotential tabulated(std::vector<double> grid, std::vector<double> values, double a);

  double operator()(double r) const; // piecewise-linear for tabulated
};

// Regular solution chi_l(r, E) of -chi'' + [l(l+1)/r^2 + V(r)] chi = E chi,
// normalized to max |chi| = 1.
struct RadialSolution {
  int l = 0;
  double E = 0.0;
  std::vector<double> grid; // radii in (0, R], uniform spacing h
  std::vector<double> chi;
  double chi_at_R = 0.0;
  double dchi_at_R = 0.0;
  double h = 0.0;

  // chi at arbitrary r via 4-point Lagrange interpolation on the grid;
  // r below the first grid point uses the r^{l+1} asymptotic.
  double interpolate(double r) const;
  // R_l(r) = chi(r)/r, the smooth multiplicative radial factor.
  double smooth_factor(double r) const;
};

// Numerov integration on a uniform grid. Throws NodeAtBoundary when
// |chi(R)| < 1e-12 max|chi| (APW matching hazard).
RadialSolution integrate_radial(const RadialPotential& pot, int l, double E, double R, int n_grid);

// Wronskian residual of the spherical well: W(E) = chi_in(a) chi_out'(a) -
// chi_in'(a) chi_out(a), chi_in = sin(alpha r), chi_out = e^{-beta r},
// alpha = sqrt(V0-|E|), beta = sqrt(|E|). Zero exactly at bound states.
double well_matching_residual(double V0, double a, double E);

// Unique bound state of the well in the single-root regime
// pi^2/4 < V0 a^2 <= 9 pi^2/4, via bracket scan + bisection.
double find_bound_state(double V0, double a, double tol);

struct WellNormalization {
  double A = 0.0;
  double C = 0.0;
};

// A, C > 0 with chi = A sin(alpha r) on (0,a), chi = C e^{-beta r} on [a,inf),
// continuous at a and with unit L2 norm of chi on (0, inf).
WellNormalization normalize_well_state(double V0, double a, double E);

// Composite-Simpson integral of f over the solution's uniform grid,
// including the implicit r=0 point where chi=0.
double simpson_on_grid(const std::vector<double>& grid, const std::vector<double>& values, double f0_at_zero);

// 5-point finite-difference derivative of tabulated values on a uniform grid.
std::vector<double> derivative_on_grid(const std::vector<double>& values, double h);

} // namespace apwcert::radial
