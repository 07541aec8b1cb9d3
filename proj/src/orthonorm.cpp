// SPDX-License-Identifier: Apache-2.0
#include "apwcert/orthonorm.hpp"

#include <cmath>
#include <stdexcept>

#include "apwcert/errors.hpp"

namespace apwcert::orthonorm {

double norm_inf(const Eigen::MatrixXcd& A) {
  double best = 0.0;
  for (int i = 0; i < A.rows(); ++i) best = std::max(best, A.row(i).cwiseAbs().sum());
  return best;
}

double norm_1(const Eigen::MatrixXcd& A) {
  double best = 0.0;
  for (int j = 0; j < A.cols(); ++j) best = std::max(best, A.col(j).cwiseAbs().sum());
  return best;
}

GramPerturbation gram_perturbation(const Eigen::MatrixXcd& gram) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("gram_perturbation: square matrix required");
  if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + gram.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("gram_perturbation: matrix not Hermitian");
  GramPerturbation p;
  p.eps = gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  p.norm1 = norm_1(p.eps);
  p.eps_max = 0.0;
  for (int i = 0; i < gram.rows(); ++i) p.eps_max = std::max(p.eps_max, std::abs(p.eps(i, i)));
  return p;
}

SchmidtResult schmidt_matrix(const Eigen::MatrixXcd& gram) {
  const int M = static_cast<int>(gram.rows());
  if (gram.cols() != M || M == 0) throw std::invalid_argument("schmidt_matrix: square matrix required");
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("schmidt_matrix: gram is not positive definite");

  // The proof's transcription with the physics inner product
  // <.,.> (antilinear first slot) corresponds to running the recursion on
  // gram^T; the resulting B then satisfies B gram B^† = I.
  const Eigen::MatrixXcd G = gram.transpose();

  // B~_ij = sum_k (A_{i-1}^{-1})_{jk} <psi^k, psi^i>, zero for j >= i;
  // A_{i-1} = leading (i-1) minor of G, solved directly per step.
  Eigen::MatrixXcd Btilde = Eigen::MatrixXcd::Zero(M, M);
  for (int i = 1; i < M; ++i) {
    const Eigen::MatrixXcd A = G.topLeftCorner(i, i);
    const Eigen::VectorXcd g = G.block(0, i, i, 1); // <psi^k, psi^i>, k < i
    const Eigen::VectorXcd y = A.ldlt().solve(g);   // A^{-1} g
    for (int j = 0; j < i; ++j) Btilde(i, j) = y(j);
  }
  // ||psi~_i||^2 = ((I - B~)* G (I - B~)^T)_{ii}
  const Eigen::MatrixXcd T = Eigen::MatrixXcd::Identity(M, M) - Btilde;
  const Eigen::MatrixXcd gramTilde = T.conjugate() * G * T.transpose();
  Eigen::VectorXd norms(M);
  for (int i = 0; i < M; ++i) {
    const double n2 = gramTilde(i, i).real();
    if (!(n2 > 0.0)) throw NotPositiveDefinite("schmidt_matrix: non-positive intermediate norm");
    norms(i) = std::sqrt(n2);
  }
  SchmidtResult res;
  res.B = Eigen::MatrixXcd::Zero(M, M);
  for (int i = 0; i < M; ++i) res.B.row(i) = T.row(i) / norms(i);

  const GramPerturbation p = gram_perturbation(gram);
  const double small = 2.0 * p.norm1 + p.eps_max;
  res.deviation_inf = norm_inf(res.B - Eigen::MatrixXcd::Identity(M, M));
  res.bound_applicable = small < 1.0;
  if (res.bound_applicable) {
    res.bound_value = small / (1.0 - small);
    // strict inequality; the eps = 0 corner has both sides exactly zero
    res.bound_ok = res.deviation_inf < res.bound_value || (res.deviation_inf < 1e-15 && res.bound_value < 1e-15);
  }
  return res;
}

} // namespace apwcert::orthonorm
