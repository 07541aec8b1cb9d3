// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apwcert/certificate.hpp"
#include "apwcert/geometry.hpp"
#include "apwcert/secular.hpp"

namespace apwcert::experiments {

struct SweepRow {
  double gamma = 0.0;    // Gamma = L2 trace-jump amplitude of the radial form r^{-1} chi
  double tilde_E1 = 0.0; // broken-form value of the normalized discontinuous state
  double jump_h32 = 0.0; // H^{3/2} jump of the normalized u (l=0 weight is 1)
  double deficit = 0.0;  // E_1 - tilde_E1
};

// Closed-form broken-form energy of the spherical-well family at a signed jump
// parameter; gamma > 0 increases A and decreases C under ||u|| = 1.
// Throws NoRealSolution when the constraints are incompatible.
double well_sweep_energy(double V0, double a, double E1, double gamma_signed);

std::vector<SweepRow> run_well_sweep(double V0, double a, const std::vector<double>& gammas);

struct ConvergenceRow {
  int l_max = 0;
  double root = 0.0;           // lowest nonlinear secular root
  double jump_h32_total = 0.0; // sum over basis functions and spheres at the root
  double tail_coeff_sq = 0.0;  // truncation tail report
  certificate::Certificate cert;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<double> empty_lattice; // reference |k+G|^2 for the same G set
};

ConvergenceTable run_apw_convergence(const geometry::MuffinTinGeometry& geom, double V0, const geometry::Vec3& k,
                                     int G_count, const std::vector<int>& l_max_list,
                                     std::optional<std::pair<double, double>> E_window = std::nullopt,
                                     int n_scan = 120, int l_eval_extra = 34);

struct IntervalDemoReport {
  double dirichlet = 0.0;       // 1
  double neumann = 0.0;         // 0
  double polynomial_trial = 0.0; // 10/pi^2
  double constant_trial = 0.0;  // 0, NOT an upper bound for E_1^D
  bool constant_trial_flagged = false;
};

IntervalDemoReport run_interval_demo();

// CSV with header gamma,tilde_E1,jump_h32,deficit; %.17g round-trip format.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

} // namespace apwcert::experiments
