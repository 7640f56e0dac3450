#pragma once

#include <Eigen/Core>

namespace cloudmcdm {

struct DominantEigenpair {
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;  // normalized to unit 1-norm, nonnegative for positive input
  int sweeps = 0;
};

/// Power iteration for the Perron eigenpair of an elementwise-positive matrix.
/// Stops when successive 1-normalized iterates differ by less than `tol` in
/// the max norm. Throws ConvergenceError after `max_sweeps`.
DominantEigenpair power_iteration(const Eigen::MatrixXd& a, double tol = 1e-12, int max_sweeps = 10000);

}  // namespace cloudmcdm
