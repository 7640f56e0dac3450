#pragma once

#include <array>

#include <Eigen/Core>

#include "cloudmcdm/dataprep.hpp"
#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

/// Sum over ordered object pairs (i, l) of (z_i - z_l)(z_i - z_l)^T.
/// Symmetric positive semidefinite; zero for a single object.
Eigen::MatrixXd deviation_matrix(const NormalizedMatrix& z);

struct CombinationResult {
  std::array<double, 2> theta{};  // (subjective, objective), unit length, nonnegative
  WeightVector combined;          // kind = combined, on the simplex
  double objective_value = 0.0;   // theta^T M theta
  bool fallback = false;          // equal mix used because the deviation form vanished
};

/// Mixes subjective and objective weights with the unit-norm theta that
/// maximizes the total squared deviation of composite object scores, then
/// rescales the mix to sum 1. Throws InputError when the vectors disagree
/// in length or ids, or do not match the columns of `z`.
CombinationResult combine_weights(const WeightVector& subjective, const WeightVector& objective,
                                  const NormalizedMatrix& z);

}  // namespace cloudmcdm
