// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "apwcert/apw.hpp"
#include "apwcert/geometry.hpp"
#include "apwcert/radial.hpp"

namespace apwcert::secular {

using geometry::MuffinTinGeometry;
using geometry::Vec3;

// Muffin-tin potential: radial inside each sphere, constant elsewhere.
struct PotentialSpec {
  std::vector<radial::RadialPotential> sphere;
  double interstitial = 0.0;
};

struct SecularSystem {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd S;
  int M = 0;
  std::string note;

  std::string to_json() const; // row-major complex pairs, for debugging
};

// Region-wise broken-form assembly: interstitial plane-wave integrals in
// closed form, in-sphere integrals reduced to radial quadratures by
// spherical-harmonic orthogonality. No distributional boundary terms.
SecularSystem assemble(const std::vector<apw::ApwFunction>& basis, const MuffinTinGeometry& geom,
                       const PotentialSpec& V);

struct GeneralizedEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXcd vectors; // columns, S-orthonormal
};

// H c = E S c via Cholesky reduction of S. Throws SingularOverlap with the
// offending eigenvalue when min eig(S) <= 1e-10 max eig(S).
GeneralizedEigen solve_generalized(const SecularSystem& sys);

struct ScanResult {
  std::vector<double> roots;
  std::vector<std::pair<double, double>> excluded; // radial-node pole intervals
};

// Roots of E -> det(H(E) - E S(E)) by sign tracking of the Hermitian pencil
// eigenvalue signs on an n_scan grid, bisection refinement to 1e-8.
ScanResult scan_nonlinear_secular(const std::function<SecularSystem(double)>& builder, double E_lo, double E_hi,
                                  int n_scan);

// Fourier-multiplier eigenvalues |k+G|^2 of the shifted Laplacian, sorted.
std::vector<double> empty_lattice_bands(const Vec3& k, const std::vector<Vec3>& G_list,
                                        const MuffinTinGeometry& cell);

enum class BoundaryCondition { Dirichlet, Neumann };

// Rayleigh-Ritz on (0, pi) with the sine (Dirichlet) or cosine (Neumann)
// basis; the lowest Ritz value is exactly 1 resp. 0.
double interval_laplacian_demo(BoundaryCondition bc, int n_modes);

// Rayleigh quotient of the polynomial trial x(pi - x) in the Dirichlet form:
// 10/pi^2, an upper bound for E_1^D = 1.
double interval_polynomial_trial();

} // namespace apwcert::secular
