#include "cloudmcdm/power_iteration.hpp"

#include <cmath>

#include "cloudmcdm/error.hpp"

namespace cloudmcdm {

DominantEigenpair power_iteration(const Eigen::MatrixXd& a, double tol, int max_sweeps) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw Error("power_iteration: matrix must be square and non-empty");

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    next.noalias() = a * v;
    const double norm = next.sum();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ConvergenceError("power_iteration: iterate collapsed");
    next /= norm;
    const double change = (next - v).cwiseAbs().maxCoeff();
    v.swap(next);
    if (change < tol) {
      // At the fixed point A v = lambda v, so the 1-norm ratio gives lambda.
      const Eigen::VectorXd av = a * v;
      return {av.sum() / v.sum(), v, sweep};
    }
  }
  throw ConvergenceError("power_iteration: no convergence after " + std::to_string(max_sweeps) + " sweeps");
}

}  // namespace cloudmcdm
