// SPDX-License-Identifier: Apache-2.0
#include "apwcert/secular.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "apwcert/errors.hpp"
#include "apwcert/special_fn.hpp"

namespace apwcert::secular {

using apw::ApwFunction;
using Complex = std::complex<double>;
using special::lm_index;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

// int_{|x - center| < R} e^{iq.x} dx = e^{iq.center} 4 pi R^2 j_1(qR)/q
Complex sphere_plane_wave_integral(const Vec3& q, const Vec3& center, double R) {
  const double qn = q.norm();
  if (qn * R < 1e-12) return 4.0 / 3.0 * kPi * R * R * R;
  return std::exp(kI * q.dot(center)) * 4.0 * kPi * R * R * special::spherical_bessel_j(1, qn * R) / qn;
}

} // namespace

std::string SecularSystem::to_json() const {
  nlohmann::json j;
  j["M"] = M;
  j["note"] = note;
  auto dump = [&](const Eigen::MatrixXcd& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < A.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < A.cols(); ++c) row.push_back({A(i, c).real(), A(i, c).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  j["H"] = dump(H);
  j["S"] = dump(S);
  return j.dump(2);
}

SecularSystem assemble(const std::vector<ApwFunction>& basis, const MuffinTinGeometry& geom, const PotentialSpec& V) {
  const int M = static_cast<int>(basis.size());
  if (M == 0) throw std::invalid_argument("assemble: empty basis");
  if (V.sphere.size() != geom.spheres.size())
    throw std::invalid_argument("assemble: one sphere potential per sphere required");
  for (const auto& f : basis) {
    if ((f.k - basis.front().k).norm() > 1e-12)
      throw IncompatibleBasis("assemble: basis functions with mixed Bloch vectors k");
    if (std::abs(f.E - basis.front().E) > 1e-12 && !geom.spheres.empty())
      throw IncompatibleBasis("assemble: basis functions with mixed energy parameters");
  }
  const int l_max = basis.front().l_max;
  if (l_max > 150 || M > 2000)
    throw QuadratureBudgetExceeded("assemble: basis budget exceeded (l_max <= 150, M <= 2000)");

  const double vol = geom.volume();
  SecularSystem sys;
  sys.M = M;
  sys.H = Eigen::MatrixXcd::Zero(M, M);
  sys.S = Eigen::MatrixXcd::Zero(M, M);

  for (int i = 0; i < M; ++i) {
    for (int j = i; j < M; ++j) {
      const Vec3 qi = basis[i].q(), qj = basis[j].q();
      const Vec3 dG = basis[j].G - basis[i].G;
      // interstitial: cell integral minus per-sphere corrections
      Complex ov = (dG.norm() < 1e-12) ? Complex(vol, 0.0) : Complex(0.0, 0.0);
      for (const auto& s : geom.spheres) ov -= sphere_plane_wave_integral(dG, s.center, s.radius);
      Complex sij = ov;
      Complex hij = qi.dot(qj) * ov + V.interstitial * ov;
      // spheres: spherical-harmonic orthogonality -> cached radial integrals
      for (size_t a = 0; a < geom.spheres.size(); ++a) {
        const auto& bi = *basis[i].radial[a];
        const Complex phase = std::exp(kI * dG.dot(geom.spheres[a].center));
        Complex so = 0.0, ho = 0.0;
        for (int l = 0; l <= l_max; ++l) {
          Complex mm = 0.0;
          for (int m = -l; m <= l; ++m)
            mm += std::conj(basis[i].coeffs[a][lm_index(l, m)]) * basis[j].coeffs[a][lm_index(l, m)];
          so += mm * bi.norm_l[l];
          ho += mm * (bi.kin_l[l] + bi.pot_l[l]);
        }
        sij += phase * so;
        hij += phase * ho;
      }
      sys.S(i, j) = sij;
      sys.H(i, j) = hij;
      if (j != i) {
        sys.S(j, i) = std::conj(sij);
        sys.H(j, i) = std::conj(hij);
      }
    }
  }
  // symmetrize away assembly round-off on the diagonal blocks
  sys.S = 0.5 * (sys.S + sys.S.adjoint()).eval();
  sys.H = 0.5 * (sys.H + sys.H.adjoint()).eval();
  return sys;
}

GeneralizedEigen solve_generalized(const SecularSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> schk(sys.S, Eigen::EigenvaluesOnly);
  const double smin = schk.eigenvalues().minCoeff();
  const double smax = schk.eigenvalues().maxCoeff();
  if (!(smin > 1e-10 * smax))
    throw SingularOverlap("overlap matrix is numerically singular (min eigenvalue " + std::to_string(smin) + ")");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.H, sys.S, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  GeneralizedEigen out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

ScanResult scan_nonlinear_secular(const std::function<SecularSystem(double)>& builder, double E_lo, double E_hi,
                                  int n_scan) {
  if (!(E_hi > E_lo) || n_scan < 2) throw std::invalid_argument("scan_nonlinear_secular: bad scan range");
  auto det_sign = [&](double E) -> int {
    const SecularSystem sys = builder(E);
    Eigen::MatrixXcd P = sys.H - E * sys.S;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, Eigen::EigenvaluesOnly);
    int sign = 1;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = es.eigenvalues()[i];
      if (v < 0.0) sign = -sign;
      if (v == 0.0) return 0;
    }
    return sign;
  };

  ScanResult out;
  std::vector<double> Es(n_scan + 1);
  std::vector<int> signs(n_scan + 1, 0);
  std::vector<bool> valid(n_scan + 1, false);
  for (int i = 0; i <= n_scan; ++i) {
    Es[i] = E_lo + (E_hi - E_lo) * i / n_scan;
    try {
      signs[i] = det_sign(Es[i]);
      valid[i] = true;
    } catch (const RadialNodeAtR&) {
      valid[i] = false;
    } catch (const NodeAtBoundary&) {
      valid[i] = false;
    }
  }
  for (int i = 0; i <= n_scan; ++i) {
    if (!valid[i]) {
      const double lo = (i == 0) ? Es[0] : Es[i - 1];
      const double hi = (i == n_scan) ? Es[n_scan] : Es[i + 1];
      if (!out.excluded.empty() && out.excluded.back().second >= lo)
        out.excluded.back().second = hi;
      else
        out.excluded.emplace_back(lo, hi);
    }
  }
  for (int i = 0; i + 1 <= n_scan; ++i) {
    if (!valid[i] || !valid[i + 1]) continue;
    if (signs[i] == 0) {
      out.roots.push_back(Es[i]);
      continue;
    }
    if (signs[i] * signs[i + 1] < 0) {
      double lo = Es[i], hi = Es[i + 1];
      int slo = signs[i];
      bool pole = false;
      while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        int sm;
        try {
          sm = det_sign(mid);
        } catch (const Error&) {
          pole = true; // pole inside the bracket; report the bracket midpoint
          break;
        }
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
      }
      double root = 0.5 * (lo + hi);
      if (!pole) {
        // secant polish on the pencil eigenvalue nearest zero (smooth at a
        // simple root, unlike the determinant sign)
        auto nearest = [&](double E) {
          const SecularSystem sys = builder(E);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.H - E * sys.S, Eigen::EigenvaluesOnly);
          double best = es.eigenvalues()[0];
          for (int q = 1; q < es.eigenvalues().size(); ++q)
            if (std::abs(es.eigenvalues()[q]) < std::abs(best)) best = es.eigenvalues()[q];
          return best;
        };
        try {
          double e0 = lo, e1 = hi;
          double f0 = nearest(e0), f1 = nearest(e1);
          for (int it = 0; it < 12 && f1 != f0; ++it) {
            const double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
            if (!(e2 > Es[i] - (Es[1] - Es[0]) && e2 < Es[i + 1] + (Es[1] - Es[0]))) break;
            e0 = e1;
            f0 = f1;
            e1 = e2;
            f1 = nearest(e1);
            if (std::abs(e1 - e0) < 1e-13 * std::max(1.0, std::abs(e1))) break;
          }
          if (std::abs(f1) <= std::abs(nearest(root))) root = e1;
        } catch (const Error&) {
          // keep the bisection result
        }
      }
      out.roots.push_back(root);
    }
  }
  return out;
}

std::vector<double> empty_lattice_bands(const Vec3& k, const std::vector<Vec3>& G_list, const MuffinTinGeometry& cell) {
  std::vector<double> bands;
  bands.reserve(G_list.size());
  for (const auto& G : G_list) {
    if (!geometry::is_reciprocal_vector(cell, G))
      throw InvalidReciprocal("empty_lattice_bands: G . a_i not in 2 pi Z");
    bands.push_back((k + G).squaredNorm());
  }
  std::sort(bands.begin(), bands.end());
  return bands;
}

double interval_laplacian_demo(BoundaryCondition bc, int n_modes) {
  if (n_modes < 2) throw std::invalid_argument("interval_laplacian_demo: n_modes >= 2");
  // Closed-form Rayleigh-Ritz matrices: both bases are orthonormal and
  // diagonalize the form, H_jj = j^2 with j starting at 1 (sine, H^1_0) or
  // at 0 (cosine, H^1).
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  const int j0 = (bc == BoundaryCondition::Dirichlet) ? 1 : 0;
  for (int j = 0; j < n_modes; ++j) H(j, j) = static_cast<double>((j + j0)) * (j + j0);
  SecularSystem sys;
  sys.H = H;
  sys.S = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  sys.M = n_modes;
  return solve_generalized(sys).values[0];
}

double interval_polynomial_trial() {
  // trial x(pi-x): q = int (pi-2x)^2 = pi^3/3, <u,u> = int x^2(pi-x)^2 = pi^5/30
  const double q = kPi * kPi * kPi / 3.0;
  const double s = std::pow(kPi, 5) / 30.0;
  return q / s;
}

} // namespace apwcert::secular
