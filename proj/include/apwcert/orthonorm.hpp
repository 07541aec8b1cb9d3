// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace apwcert::orthonorm {

// Perturbation of a Gram matrix from the identity: gram = I + eps, with the
// max-column-sum norm ||eps||_1 and eps_max = max_i |eps_ii|.
struct GramPerturbation {
  Eigen::MatrixXcd eps;
  double norm1 = 0.0;
  double eps_max = 0.0;
};

GramPerturbation gram_perturbation(const Eigen::MatrixXcd& gram);

struct SchmidtResult {
  Eigen::MatrixXcd B;      // lower triangular, positive real diagonal
  bool bound_applicable = false; // 2||eps||_1 + eps_max < 1
  bool bound_ok = false;         // ||B - I||_inf strictly below the bound
  double bound_value = 0.0;      // (2||eps||_1+eps_max)/(1-2||eps||_1-eps_max)
  double deviation_inf = 0.0;    // ||B - I||_inf (max row sum)
};

// Schmidt orthonormalization written as B = F (I - B~) with B~ from
// leading-minor inverse solves and F = diag(1/||psi~_i||); B gram B^† = I.
// Throws NotPositiveDefinite when gram is not positive definite.
SchmidtResult schmidt_matrix(const Eigen::MatrixXcd& gram);

// max row absolute sum
double norm_inf(const Eigen::MatrixXcd& A);
// max column absolute sum
double norm_1(const Eigen::MatrixXcd& A);

} // namespace apwcert::orthonorm
