#pragma once

#include <Eigen/Core>

namespace levylab {

struct NnlsOptions {
  // Dual feasibility: stop when max_j (A^T (b - A w))_j <= dual_tol * max_j |(A^T b)_j|
  // over the inactive columns.
  double dual_tol = 1e-10;
  // 0 selects 10 * columns.
  int max_iterations = 0;
};

struct NnlsResult {
  Eigen::VectorXd weights;
  double relative_residual = 0.0;  // ||A w - b|| / ||b||
  int iterations = 0;
  bool converged = false;  // false when the iteration cap was hit
};

// Lawson-Hanson active-set method for min ||A w - b|| subject to w >= 0.
// Subproblems are solved on the Gram matrix of the passive columns.
NnlsResult solve_nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const NnlsOptions& options = {});

}  // namespace levylab
