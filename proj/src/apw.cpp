// SPDX-License-Identifier: Apache-2.0
#include "apwcert/apw.hpp"

#include <cmath>
#include <stdexcept>

#include "apwcert/errors.hpp"

namespace apwcert::apw {

using special::lm_count;
using special::lm_index;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

void angles_of(const Vec3& v, double& theta, double& phi) {
  const double n = v.norm();
  if (n == 0.0) {
    theta = 0.0;
    phi = 0.0;
    return;
  }
  theta = std::acos(std::clamp(v.z() / n, -1.0, 1.0));
  phi = std::atan2(v.y(), v.x());
}

Complex ipow(int l) {
  switch (l & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

} // namespace

std::vector<Complex> rayleigh_coefficients(const Vec3& q, const Vec3& center, double R, int l_eval) {
  if (l_eval < 0 || l_eval > 150) throw std::invalid_argument("rayleigh_coefficients: l_eval out of range");
  const double qn = q.norm();
  if (qn * R > 200.0) throw std::invalid_argument("rayleigh_coefficients: |q| R > 200");
  double tq, pq;
  angles_of(q, tq, pq);
  const auto jl = special::spherical_bessel_j_upto(l_eval, qn * R);
  const Complex phase = std::exp(kI * q.dot(center));
  std::vector<Complex> c(lm_count(l_eval));
  for (int l = 0; l <= l_eval; ++l) {
    const Complex pre = 4.0 * kPi * ipow(l) * jl[l] * phase;
    for (int m = -l; m <= l; ++m) c[lm_index(l, m)] = pre * std::conj(special::spherical_harmonic(l, m, tq, pq));
  }
  return c;
}

double rayleigh_tail_sq(const Vec3& q, double R, int l_eval) {
  const double x = q.norm() * R;
  double tail = 0.0;
  for (int l = l_eval + 1; l <= l_eval + 400; ++l) {
    const double jl = special::spherical_bessel_j(l, x);
    const double term = (2.0 * l + 1.0) * 4.0 * kPi * jl * jl;
    tail += term;
    if (l > l_eval + 5 && term < 1e-300) break;
  }
  return tail;
}

std::shared_ptr<const SphereBasisData> build_sphere_basis(const radial::RadialPotential& pot, int l_max, double E,
                                                          double R, int n_grid) {
  auto data = std::make_shared<SphereBasisData>();
  data->R = R;
  data->l_max = l_max;
  data->E = E;
  data->chi.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    try {
      data->chi.push_back(radial::integrate_radial(pot, l, E, R, n_grid));
    } catch (const NodeAtBoundary& e) {
      throw RadialNodeAtR(std::string("chi_l(R,E) ~ 0 for l=") + std::to_string(l) + ", E=" + std::to_string(E) +
                          " (" + e.what() + ")");
    }
  }
  data->Rl_at_R.resize(l_max + 1);
  data->norm_l.resize(l_max + 1);
  data->kin_l.resize(l_max + 1);
  data->pot_l.resize(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    const auto& sol = data->chi[l];
    data->Rl_at_R[l] = sol.chi_at_R / R;
    const int n = static_cast<int>(sol.grid.size());
    std::vector<double> sq(n), kin(n), vq(n);
    const auto dchi = radial::derivative_on_grid(sol.chi, sol.h);
    for (int i = 0; i < n; ++i) {
      const double r = sol.grid[i];
      const double c = sol.chi[i];
      sq[i] = c * c;
      const double broken = dchi[i] - c / r;
      kin[i] = broken * broken + l * (l + 1.0) * c * c / (r * r);
      vq[i] = pot(r) * c * c;
    }
    data->norm_l[l] = radial::simpson_on_grid(sol.grid, sq, 0.0);
    data->kin_l[l] = radial::simpson_on_grid(sol.grid, kin, 0.0);
    data->pot_l[l] = radial::simpson_on_grid(sol.grid, vq, 0.0);
  }
  return data;
}

std::vector<Complex> apw_matching_coefficients(const Vec3& q, const SphereBasisData& basis, int l_max) {
  if (l_max > basis.l_max) throw std::invalid_argument("apw_matching_coefficients: l_max exceeds radial table");
  double tq, pq;
  angles_of(q, tq, pq);
  const auto jl = special::spherical_bessel_j_upto(l_max, q.norm() * basis.R);
  std::vector<Complex> A(lm_count(l_max));
  for (int l = 0; l <= l_max; ++l) {
    const double denom = basis.Rl_at_R[l];
    const Complex pre = 4.0 * kPi * ipow(l) * jl[l] / denom;
    for (int m = -l; m <= l; ++m) A[lm_index(l, m)] = pre * std::conj(special::spherical_harmonic(l, m, tq, pq));
  }
  return A;
}

ApwFunction make_apw_function(std::shared_ptr<const MuffinTinGeometry> geom,
                              const std::vector<std::shared_ptr<const SphereBasisData>>& radial, const Vec3& k,
                              const Vec3& G, int l_max) {
  if (radial.size() != geom->spheres.size())
    throw std::invalid_argument("make_apw_function: one radial table per sphere required");
  ApwFunction f;
  f.k = k;
  f.G = G;
  f.l_max = l_max;
  f.geom = std::move(geom);
  f.radial = radial;
  f.E = radial.empty() ? 0.0 : radial.front()->E;
  const Vec3 q = k + G;
  f.coeffs.reserve(f.geom->spheres.size());
  for (size_t a = 0; a < f.geom->spheres.size(); ++a)
    f.coeffs.push_back(apw_matching_coefficients(q, *radial[a], l_max));
  return f;
}

BoundaryJump boundary_jump(const ApwFunction& f, size_t alpha, int l_eval) {
  if (alpha >= f.geom->spheres.size()) throw std::invalid_argument("boundary_jump: bad sphere index");
  if (l_eval <= f.l_max) throw std::invalid_argument("boundary_jump: l_eval must exceed l_max");
  const auto& sph = f.geom->spheres[alpha];
  const Vec3 q = f.q();
  BoundaryJump bj;
  bj.alpha = alpha;
  bj.R = sph.radius;
  bj.l_eval = l_eval;
  bj.g = rayleigh_coefficients(q, sph.center, sph.radius, l_eval);
  const Complex phase = std::exp(kI * q.dot(sph.center));
  const auto& basis = *f.radial[alpha];
  for (int l = 0; l <= f.l_max; ++l)
    for (int m = -l; m <= l; ++m)
      bj.g[lm_index(l, m)] -= phase * f.coeffs[alpha][lm_index(l, m)] * basis.Rl_at_R[l];
  bj.tail_coeff_sq = rayleigh_tail_sq(q, sph.radius, l_eval);
  return bj;
}

Complex evaluate_apw(const ApwFunction& f, const Vec3& x) {
  if (!f.geom->in_closed_cell(x)) throw OutOfCell("evaluate_apw: point outside the closed cell");
  const auto alpha = f.geom->sphere_containing(x);
  const Vec3 q = f.q();
  bool interior = false;
  size_t a = 0;
  if (alpha) {
    interior = true;
    a = *alpha;
  } else {
    // boundary points evaluate the interior expansion
    for (size_t s = 0; s < f.geom->spheres.size(); ++s) {
      const double d = (x - f.geom->spheres[s].center).norm();
      if (std::abs(d - f.geom->spheres[s].radius) < 1e-13 * std::max(1.0, f.geom->spheres[s].radius)) {
        interior = true;
        a = s;
        break;
      }
    }
  }
  if (!interior) return std::exp(kI * q.dot(x));
  const auto& sph = f.geom->spheres[a];
  const Vec3 rel = x - sph.center;
  const double r = rel.norm();
  double th, ph;
  angles_of(rel, th, ph);
  Complex sum = 0.0;
  const auto& basis = *f.radial[a];
  for (int l = 0; l <= f.l_max; ++l) {
    const double Rl = basis.chi[l].smooth_factor(r);
    for (int m = -l; m <= l; ++m)
      sum += f.coeffs[a][lm_index(l, m)] * Rl * special::spherical_harmonic(l, m, th, ph);
  }
  return std::exp(kI * q.dot(sph.center)) * sum;
}

} // namespace apwcert::apw
