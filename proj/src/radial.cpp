// SPDX-License-Identifier: Apache-2.0
#include "apwcert/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apwcert/errors.hpp"

namespace apwcert::radial {

RadialPotential RadialPotential::constant_well(double depth, double a) {
  RadialPotential p;
  p.kind = Kind::ConstantWell;
  p.depth = depth;
  p.a = a;
  return p;
}

RadialPotential RadialPotential::free_space(double a) { return constant_well(0.0, a); }

RadialPotential RadialPotential::tabulated(std::vector<double> grid, std::vector<double> values, double a) {
  if (grid.size() != values.size() || grid.empty())
    throw std::invalid_argument("tabulated potential: grid/value size mismatch");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("tabulated potential: grid not strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("tabulated potential: non-finite value");
  RadialPotential p;
  p.kind = Kind::Tabulated;
  p.a = a;
  p.grid = std::move(grid);
  p.values = std::move(values);
  return p;
}

double RadialPotential::operator()(double r) const {
  // interior profile on the closed ball; the solver's grid ends at r = a
  if (kind == Kind::ConstantWell) return r <= a ? -depth : 0.0;
  if (r <= grid.front()) return values.front();
  if (r >= grid.back()) return values.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  const size_t i = static_cast<size_t>(it - grid.begin());
  const double t = (r - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return (1.0 - t) * values[i - 1] + t * values[i];
}

double RadialSolution::interpolate(double r) const {
  const int n = static_cast<int>(grid.size());
  if (r <= 0.0) return 0.0;
  if (r < grid.front()) {
    // regular behaviour chi ~ r^{l+1}
    return chi.front() * std::pow(r / grid.front(), l + 1);
  }
  if (r >= grid.back()) return chi.back();
  int i = static_cast<int>(r / h) - 1; // grid[i] = (i+1) h
  i = std::clamp(i, 0, n - 2);
  int lo = std::clamp(i - 1, 0, n - 4);
  double result = 0.0;
  for (int a = lo; a < lo + 4; ++a) {
    double term = chi[a];
    for (int b = lo; b < lo + 4; ++b) {
      if (a == b) continue;
      term *= (r - grid[b]) / (grid[a] - grid[b]);
    }
    result += term;
  }
  return result;
}

double RadialSolution::smooth_factor(double r) const {
  if (r >= grid.front()) return interpolate(r) / r;
  const double f1 = chi.front() / grid.front();
  if (l == 0) return f1;
  if (r <= 0.0) return 0.0;
  return f1 * std::pow(r / grid.front(), l);
}

RadialSolution integrate_radial(const RadialPotential& pot, int l, double E, double R, int n_grid) {
  if (n_grid < 100) throw std::invalid_argument("integrate_radial: n_grid >= 100 required");
  if (!(R > 0.0)) throw std::invalid_argument("integrate_radial: R > 0 required");
  if (l < 0) throw std::invalid_argument("integrate_radial: l >= 0 required");

  RadialSolution sol;
  sol.l = l;
  sol.E = E;
  sol.h = R / n_grid;
  const double h = sol.h;
  sol.grid.resize(n_grid);
  sol.chi.resize(n_grid);
  for (int i = 0; i < n_grid; ++i) sol.grid[i] = (i + 1) * h;

  auto f = [&](double r) { return l * (l + 1.0) / (r * r) + pot(r) - E; };

  // Seed from the r->0 asymptotic chi ~ r^{l+1}(1 + c r^2); arbitrary overall
  // scale (normalized below) keeps large-l seeds away from underflow.
  const double c0 = (pot(0.5 * h) - E) / (4.0 * l + 6.0);
  double chi1 = std::pow(0.5, l + 1) * (1.0 + c0 * h * h);
  double chi2 = 1.0 * (1.0 + c0 * 4.0 * h * h);
  sol.chi[0] = chi1;
  sol.chi[1] = chi2;
  const double h2 = h * h;
  double fm = f(sol.grid[0]), fc = f(sol.grid[1]);
  double maxabs = std::max(std::abs(chi1), std::abs(chi2));
  for (int i = 2; i < n_grid; ++i) {
    const double fp = f(sol.grid[i]);
    const double num = 2.0 * (1.0 + 5.0 * h2 * fc / 12.0) * sol.chi[i - 1] - (1.0 - h2 * fm / 12.0) * sol.chi[i - 2];
    sol.chi[i] = num / (1.0 - h2 * fp / 12.0);
    fm = fc;
    fc = fp;
    maxabs = std::max(maxabs, std::abs(sol.chi[i]));
    if (maxabs > 1e250) {
      for (int k = 0; k <= i; ++k) sol.chi[k] *= 1e-250;
      maxabs *= 1e-250;
    }
  }
  const double scale = 1.0 / maxabs;
  for (auto& v : sol.chi) v *= scale;

  sol.chi_at_R = sol.chi.back();
  const auto d = derivative_on_grid(sol.chi, h);
  sol.dchi_at_R = d.back();

  if (std::abs(sol.chi_at_R) < 1e-12)
    throw NodeAtBoundary("radial solution has a node at R (l=" + std::to_string(l) + ", E=" + std::to_string(E) + ")");
  return sol;
}

double well_matching_residual(double V0, double a, double E) {
  if (!(E > -V0 && E < 0.0)) throw DomainError("well_matching_residual: need -V0 < E < 0");
  const double alpha = std::sqrt(V0 - std::abs(E));
  const double beta = std::sqrt(std::abs(E));
  const double chi_in = std::sin(alpha * a);
  const double dchi_in = alpha * std::cos(alpha * a);
  const double chi_out = std::exp(-beta * a);
  const double dchi_out = -beta * chi_out;
  return chi_in * dchi_out - dchi_in * chi_out;
}

double find_bound_state(double V0, double a, double tol) {
  const double va2 = V0 * a * a;
  const double pi2_4 = 9.8696044010893586188 / 4.0;
  if (!(va2 > pi2_4 && va2 <= 9.0 * pi2_4))
    throw DomainError("find_bound_state: need pi^2/4 < V0 a^2 <= 9 pi^2/4");
  const int n_scan = 1000;
  const double eps = 1e-6 * V0;
  double lo = -V0 + eps, hi = -eps;
  double prevE = lo, prevW = well_matching_residual(V0, a, prevE);
  double blo = 0.0, bhi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= n_scan; ++i) {
    const double Ei = lo + (hi - lo) * i / n_scan;
    const double Wi = well_matching_residual(V0, a, Ei);
    if (prevW == 0.0) return prevE;
    if (prevW * Wi < 0.0) {
      blo = prevE;
      bhi = Ei;
      bracketed = true;
      break;
    }
    prevE = Ei;
    prevW = Wi;
  }
  if (!bracketed)
    throw NoBracket("find_bound_state: no sign change of the residual on (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ") over " + std::to_string(n_scan) + " samples");
  double Wlo = well_matching_residual(V0, a, blo);
  while (bhi - blo > tol) {
    const double mid = 0.5 * (blo + bhi);
    const double Wm = well_matching_residual(V0, a, mid);
    if (Wm == 0.0) return mid;
    if (Wlo * Wm < 0.0) {
      bhi = mid;
    } else {
      blo = mid;
      Wlo = Wm;
    }
  }
  return 0.5 * (blo + bhi);
}

WellNormalization normalize_well_state(double V0, double a, double E) {
  const double alpha = std::sqrt(V0 - std::abs(E));
  const double beta = std::sqrt(std::abs(E));
  const double s = std::sin(alpha * a);
  const double u = std::exp(-beta * a);
  const double P = 0.5 * a - std::sin(2.0 * alpha * a) / (4.0 * alpha);
  const double Q = std::exp(-2.0 * beta * a) / (2.0 * beta);
  WellNormalization n;
  n.A = 1.0 / std::sqrt(P + (s / u) * (s / u) * Q);
  n.C = n.A * s / u;
  return n;
}

double simpson_on_grid(const std::vector<double>& grid, const std::vector<double>& values, double f0_at_zero) {
  const int n = static_cast<int>(grid.size()); // intervals from 0 to grid.back()
  if (n < 4 || values.size() != grid.size()) throw std::invalid_argument("simpson_on_grid: bad sizes");
  const double h = grid[0];
  // y_0 = f0_at_zero at r=0, y_i = values[i-1] at r=i*h, i=1..n
  auto y = [&](int i) { return i == 0 ? f0_at_zero : values[i - 1]; };
  int m = n;
  double tail = 0.0;
  if (m % 2 != 0) {
    // 3/8 rule on the last three intervals
    tail = 3.0 * h / 8.0 * (y(m - 3) + 3.0 * y(m - 2) + 3.0 * y(m - 1) + y(m));
    m -= 3;
  }
  double sum = y(0) + y(m);
  for (int i = 1; i < m; i += 2) sum += 4.0 * y(i);
  for (int i = 2; i < m; i += 2) sum += 2.0 * y(i);
  return sum * h / 3.0 + tail;
}

std::vector<double> derivative_on_grid(const std::vector<double>& v, double h) {
  const int n = static_cast<int>(v.size());
  if (n < 5) throw std::invalid_argument("derivative_on_grid: need >= 5 points");
  std::vector<double> d(n);
  const double ih = 1.0 / (12.0 * h);
  d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) * ih;
  d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) * ih;
  for (int i = 2; i < n - 2; ++i) d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) * ih;
  d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) * ih;
  d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) * ih;
  return d;
}

} // namespace apwcert::radial
