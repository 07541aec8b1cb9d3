// SPDX-License-Identifier: Apache-2.0
#include "apwcert/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "apwcert/errors.hpp"
#include "apwcert/radial.hpp"
#include "apwcert/sobolev.hpp"
#include "apwcert/special_fn.hpp"

namespace apwcert::experiments {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct WellForm {
  double alpha, beta, s, u, P, Q, p, q;
};

// Closed forms of the region-wise integrals for chi_in = A sin(alpha r),
// chi_out = C e^{-beta r}:
//   P = int_0^a sin^2, Q = int_a^inf e^{-2 beta r},
//   broken form = p A^2 + q C^2 with the chi^2/r surface pieces of
//   |grad(chi/r)|^2 folded in.
WellForm well_form(double V0, double a, double E1) {
  WellForm w{};
  w.alpha = std::sqrt(V0 - std::abs(E1));
  w.beta = std::sqrt(std::abs(E1));
  w.s = std::sin(w.alpha * a);
  w.u = std::exp(-w.beta * a);
  w.P = 0.5 * a - std::sin(2.0 * w.alpha * a) / (4.0 * w.alpha);
  w.Q = std::exp(-2.0 * w.beta * a) / (2.0 * w.beta);
  const double KA = w.alpha * w.alpha * (0.5 * a + std::sin(2.0 * w.alpha * a) / (4.0 * w.alpha));
  const double KC = w.beta * std::exp(-2.0 * w.beta * a) / 2.0;
  w.p = KA - w.s * w.s / a - V0 * w.P;
  w.q = KC + w.u * w.u / a;
  return w;
}

// Solves A s - C u = delta, A^2 P + C^2 Q = 1 on the branch that increases A
// and decreases C for delta > 0.
void solve_well_coeffs(const WellForm& w, double delta, double& A, double& C) {
  const double aa = w.u * w.u * w.P / (w.s * w.s) + w.Q;
  const double bb = 2.0 * delta * w.u * w.P / (w.s * w.s);
  const double cc = delta * delta * w.P / (w.s * w.s) - 1.0;
  const double disc = bb * bb - 4.0 * aa * cc;
  if (disc < 0.0)
    throw NoRealSolution("well sweep: ||u||=1 and the jump constraint are incompatible at this amplitude");
  C = (-bb + std::sqrt(disc)) / (2.0 * aa);
  A = (delta + C * w.u) / w.s;
}

} // namespace

double well_sweep_energy(double V0, double a, double E1, double gamma_signed) {
  const WellForm w = well_form(V0, a, E1);
  // gamma is the L2 trace jump of r^{-1} chi: gamma = sqrt(4 pi) * delta
  const double delta = gamma_signed / std::sqrt(4.0 * kPi);
  double A, C;
  solve_well_coeffs(w, delta, A, C);
  return w.p * A * A + w.q * C * C;
}

std::vector<SweepRow> run_well_sweep(double V0, double a, const std::vector<double>& gammas) {
  const double va2 = V0 * a * a;
  const double pi2_4 = kPi * kPi / 4.0;
  if (!(va2 > pi2_4 && va2 <= 9.0 * pi2_4))
    throw DomainError("run_well_sweep: well outside the single-bound-state regime");
  const double E1 = radial::find_bound_state(V0, a, 1e-12);
  const WellForm w = well_form(V0, a, E1);
  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (double g : gammas) {
    if (g < 0.0) throw DomainError("run_well_sweep: gamma >= 0 required");
    const double delta = g / std::sqrt(4.0 * kPi);
    double A, C;
    solve_well_coeffs(w, delta, A, C);
    SweepRow r;
    r.gamma = g;
    r.tilde_E1 = w.p * A * A + w.q * C * C;
    // H^{3/2} jump of the normalized u: only the l=0 mode is present and its
    // Laplace-Beltrami weight is 1, so it equals the L2 jump = |delta|.
    r.jump_h32 = std::abs(delta);
    r.deficit = E1 - r.tilde_E1;
    rows.push_back(r);
  }
  return rows;
}

ConvergenceTable run_apw_convergence(const geometry::MuffinTinGeometry& geom, double V0, const geometry::Vec3& k,
                                     int G_count, const std::vector<int>& l_max_list,
                                     std::optional<std::pair<double, double>> E_window, int n_scan,
                                     int l_eval_extra) {
  geom.validate();
  auto gs = geometry::reciprocal_vectors_sorted(geom, 3, k);
  if (static_cast<int>(gs.size()) < G_count) gs = geometry::reciprocal_vectors_sorted(geom, 5, k);
  gs.resize(G_count);

  ConvergenceTable table;
  table.empty_lattice = secular::empty_lattice_bands(k, gs, geom);

  const double e_min_lattice = table.empty_lattice.front();
  double lo = E_window ? E_window->first : e_min_lattice - 1.2 * V0 - 0.25;
  double hi = E_window ? E_window->second : e_min_lattice + 0.5;

  auto geom_ptr = std::make_shared<const geometry::MuffinTinGeometry>(geom);
  secular::PotentialSpec pot;
  for (const auto& s : geom.spheres) pot.sphere.push_back(radial::RadialPotential::constant_well(V0, s.radius));

  for (int l_max : l_max_list) {
    auto builder = [&, l_max](double E) {
      std::vector<std::shared_ptr<const apw::SphereBasisData>> rad;
      for (const auto& s : geom.spheres)
        rad.push_back(apw::build_sphere_basis(radial::RadialPotential::constant_well(V0, s.radius), l_max, E,
                                              s.radius, 800));
      std::vector<apw::ApwFunction> basis;
      basis.reserve(gs.size());
      for (const auto& G : gs) basis.push_back(apw::make_apw_function(geom_ptr, rad, k, G, l_max));
      return secular::assemble(basis, geom, pot);
    };
    const secular::ScanResult scan = secular::scan_nonlinear_secular(builder, lo, hi, n_scan);
    ConvergenceRow row;
    row.l_max = l_max;
    if (scan.roots.empty()) throw NoBracket("run_apw_convergence: no secular root in the energy window");
    row.root = scan.roots.front();

    // jumps and certificate at the root
    std::vector<std::shared_ptr<const apw::SphereBasisData>> rad;
    for (const auto& s : geom.spheres)
      rad.push_back(
          apw::build_sphere_basis(radial::RadialPotential::constant_well(V0, s.radius), l_max, row.root, s.radius, 800));
    std::vector<apw::ApwFunction> basis;
    for (const auto& G : gs) basis.push_back(apw::make_apw_function(geom_ptr, rad, k, G, l_max));
    const int l_eval = l_max + l_eval_extra;
    std::vector<std::vector<apw::BoundaryJump>> jumps(basis.size());
    double total = 0.0, tail = 0.0;
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t a = 0; a < geom.spheres.size(); ++a) {
        apw::BoundaryJump bj = apw::boundary_jump(basis[i], a, l_eval);
        sobolev::SphereFunction g = sobolev::SphereFunction::zero(bj.R, bj.l_eval);
        g.coeffs = bj.g;
        total += sobolev::boundary_sobolev_norm(g, 1.5);
        tail += bj.tail_coeff_sq;
        jumps[i].push_back(std::move(bj));
      }
    }
    row.jump_h32_total = total;
    row.tail_coeff_sq = tail;
    const secular::SecularSystem sys = builder(row.root);
    const secular::GeneralizedEigen solved = secular::solve_generalized(sys);
    row.cert = certificate::a_posteriori(solved, jumps, 1, 1.0, certificate::CProvenance::UserSupplied);
    table.rows.push_back(std::move(row));
  }
  return table;
}

IntervalDemoReport run_interval_demo() {
  IntervalDemoReport rep;
  rep.dirichlet = secular::interval_laplacian_demo(secular::BoundaryCondition::Dirichlet, 4);
  rep.neumann = secular::interval_laplacian_demo(secular::BoundaryCondition::Neumann, 4);
  rep.polynomial_trial = secular::interval_polynomial_trial();
  // q(c', c') = 0 for the constant Neumann eigenfunction: not an upper bound
  // for E_1^D = 1 because the constant is outside the Dirichlet form domain.
  rep.constant_trial = 0.0;
  rep.constant_trial_flagged = rep.constant_trial < rep.dirichlet;
  return rep;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "gamma,tilde_E1,jump_h32,deficit\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.gamma, r.tilde_E1, r.jump_h32, r.deficit);
    out += buf;
  }
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "gamma,tilde_E1,jump_h32,deficit")
    throw ConfigError("sweep_from_csv: bad header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRow r;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &r.gamma, &r.tilde_E1, &r.jump_h32, &r.deficit) != 4)
      throw ConfigError("sweep_from_csv: bad row: " + line);
    rows.push_back(r);
  }
  return rows;
}

} // namespace apwcert::experiments
