// SPDX-License-Identifier: Apache-2.0
#include "apwcert/certificate.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "apwcert/errors.hpp"
#include "apwcert/experiments.hpp"
#include "apwcert/orthonorm.hpp"
#include "apwcert/radial.hpp"
#include "apwcert/sobolev.hpp"

namespace apwcert::certificate {

std::string Certificate::to_json() const {
  nlohmann::json j;
  j["M"] = M;
  j["tilde_E"] = tilde_E;
  j["jump_sums"] = jump_sums;
  j["C"] = C_used;
  j["C_provenance"] = provenance == CProvenance::Fitted ? "fitted" : "user-supplied";
  j["penalty"] = penalty;
  j["smallness_statistic"] = smallness_statistic;
  return j.dump(2);
}

PenaltyResult penalty(int M, const std::vector<double>& jump_sums, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("penalty: C > 0 required");
  double total = 0.0;
  for (double s : jump_sums) {
    if (s < 0.0) throw std::invalid_argument("penalty: jump sums must be nonnegative");
    total += s;
  }
  PenaltyResult r;
  r.penalty = C * std::pow(static_cast<double>(M), 2.5) * total;
  r.smallness = M * total;
  return r;
}

Certificate a_posteriori(const secular::GeneralizedEigen& solved,
                         const std::vector<std::vector<apw::BoundaryJump>>& basis_jumps, int m0, double C,
                         CProvenance provenance) {
  const int M = static_cast<int>(solved.values.size());
  if (m0 < 1 || m0 > M) throw std::invalid_argument("a_posteriori: need 1 <= m0 <= M");
  if (static_cast<int>(basis_jumps.size()) != M)
    throw std::invalid_argument("a_posteriori: one jump set per basis function required");

  Certificate cert;
  cert.M = m0;
  cert.C_used = C;
  cert.provenance = provenance;
  cert.tilde_E.assign(solved.values.data(), solved.values.data() + m0);
  cert.jump_sums.resize(m0);
  const size_t n_spheres = basis_jumps.empty() ? 0 : basis_jumps.front().size();
  for (int m = 0; m < m0; ++m) {
    double sum = 0.0;
    for (size_t a = 0; a < n_spheres; ++a) {
      // jump of phi^m = sum_i c_i^m (jump of u^i), coefficient-wise
      const auto& ref = basis_jumps.front()[a];
      sobolev::SphereFunction jm = sobolev::SphereFunction::zero(ref.R, ref.l_eval);
      for (int i = 0; i < M; ++i) {
        const auto& bj = basis_jumps[i][a];
        for (size_t idx = 0; idx < bj.g.size(); ++idx) jm.coeffs[idx] += solved.vectors(i, m) * bj.g[idx];
      }
      sum += sobolev::boundary_sobolev_norm(jm, 1.5);
    }
    cert.jump_sums[m] = sum;
  }
  const PenaltyResult p = penalty(m0, cert.jump_sums, C);
  cert.penalty = p.penalty;
  cert.smallness_statistic = p.smallness;
  return cert;
}

WeylCheck perturbation_chain_check(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& H_hat) {
  if (H.rows() != H_hat.rows() || H.cols() != H_hat.cols() || H.rows() != H.cols())
    throw std::invalid_argument("perturbation_chain_check: same square dimension required");
  const int M = static_cast<int>(H.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(H, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(H_hat, Eigen::EigenvaluesOnly);
  WeylCheck w;
  for (int i = 0; i < M; ++i) w.max_eig_gap = std::max(w.max_eig_gap, std::abs(ea.eigenvalues()[i] - eb.eigenvalues()[i]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ed(H - H_hat, Eigen::EigenvaluesOnly);
  w.spectral_norm = std::max(std::abs(ed.eigenvalues().minCoeff()), std::abs(ed.eigenvalues().maxCoeff()));
  w.infnorm_bound = std::sqrt(static_cast<double>(M)) * orthonorm::norm_inf(H - H_hat);
  const double slack1 = w.spectral_norm - w.max_eig_gap;
  const double slack2 = w.infnorm_bound - w.spectral_norm;
  w.max_slack = std::max(slack1, slack2);
  const double scale = 1.0 + w.infnorm_bound;
  w.ok = slack1 >= -1e-11 * scale && slack2 >= -1e-11 * scale;
  return w;
}

WellBoundReport verify_bound_empirical(double V0, double a, const std::vector<double>& gammas) {
  const double va2 = V0 * a * a;
  const double pi2_4 = 9.8696044010893586188 / 4.0;
  if (!(va2 > pi2_4 && va2 <= 9.0 * pi2_4))
    throw ReferenceUnavailable("verify_bound_empirical: well outside the single-bound-state regime");
  WellBoundReport rep;
  rep.E1 = radial::find_bound_state(V0, a, 1e-12);
  const auto rows = experiments::run_well_sweep(V0, a, gammas);
  double c_fit = 0.0;
  for (const auto& r : rows) {
    rep.points.push_back({r.gamma, r.tilde_E1, r.jump_h32, r.deficit});
    if (r.jump_h32 > 0.0) c_fit = std::max(c_fit, r.deficit / r.jump_h32); // M = 1
  }
  rep.C_fit = c_fit;
  // central differences in the signed gamma (plot-convention) parameter;
  // gamma = sqrt(4 pi) * delta with delta the H^{3/2}(= L2) jump of u
  const double h = 1e-4;
  const double ep = experiments::well_sweep_energy(V0, a, rep.E1, h);
  const double em = experiments::well_sweep_energy(V0, a, rep.E1, -h);
  const double e0 = experiments::well_sweep_energy(V0, a, rep.E1, 0.0);
  rep.slope_gamma = (ep - em) / (2.0 * h);
  rep.slope_h32 = rep.slope_gamma * std::sqrt(4.0 * 3.14159265358979323846);
  rep.quad_coeff = (ep - 2.0 * e0 + em) / (h * h) / 2.0;
  return rep;
}

} // namespace apwcert::certificate
