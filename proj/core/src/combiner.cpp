#include "cloudmcdm/combiner.hpp"

#include <cmath>

#include "cloudmcdm/error.hpp"

namespace cloudmcdm {

Eigen::MatrixXd deviation_matrix(const NormalizedMatrix& z) {
  const auto m = static_cast<double>(z.rows());
  const Eigen::MatrixXd centered = z.values.rowwise() - z.values.colwise().mean();
  Eigen::MatrixXd b = 2.0 * m * (centered.transpose() * centered);
  // Exact symmetry for downstream quadratic forms.
  return 0.5 * (b + b.transpose());
}

namespace {

// Dominant eigenvector of the symmetric 2x2 matrix [[a, c], [c, b]].
Eigen::Vector2d dominant_2x2(double a, double b, double c) {
  if (c == 0.0) {
    if (a > b) return {1.0, 0.0};
    if (b > a) return {0.0, 1.0};
    return Eigen::Vector2d(1.0, 1.0).normalized();
  }
  const double half_gap = 0.5 * (a - b);
  const double lambda = 0.5 * (a + b) + std::hypot(half_gap, c);
  // Both (lambda - b, c) and (c, lambda - a) solve the system; take the better conditioned one.
  Eigen::Vector2d u(lambda - b, c);
  Eigen::Vector2d v(c, lambda - a);
  return (u.squaredNorm() >= v.squaredNorm() ? u : v).normalized();
}

}  // namespace

CombinationResult combine_weights(const WeightVector& subjective, const WeightVector& objective,
                                  const NormalizedMatrix& z) {
  const Eigen::Index n = subjective.size();
  if (objective.size() != n) {
    throw InputError("combine_weights: subjective has " + std::to_string(n) + " weights, objective has " +
                     std::to_string(objective.size()));
  }
  if (subjective.ids != objective.ids) throw InputError("combine_weights: subjective and objective ids differ");
  if (z.cols() != n) throw InputError("combine_weights: data has " + std::to_string(z.cols()) + " columns for " + std::to_string(n) + " weights");

  Eigen::MatrixXd basis(n, 2);
  basis.col(0) = subjective.weights;
  basis.col(1) = objective.weights;
  const Eigen::Matrix2d form = basis.transpose() * deviation_matrix(z) * basis;

  CombinationResult out;
  Eigen::Vector2d theta;
  if (form.cwiseAbs().maxCoeff() <= 0.0) {
    theta = Eigen::Vector2d(1.0, 1.0).normalized();
    out.fallback = true;
  } else {
    theta = dominant_2x2(form(0, 0), form(1, 1), 0.5 * (form(0, 1) + form(1, 0)));
    if (theta.sum() < 0.0 || (theta.sum() == 0.0 && theta(0) < 0.0)) theta = -theta;
    theta = theta.cwiseMax(0.0);
    theta.normalize();
  }

  out.theta = {theta(0), theta(1)};
  out.objective_value = theta.dot(form * theta);
  Eigen::VectorXd mix = basis * theta;
  mix /= mix.sum();
  out.combined = {subjective.ids, std::move(mix), WeightKind::kCombined};
  return out;
}

}  // namespace cloudmcdm
