#pragma once

#include <Eigen/Core>

#include "cloudmcdm/dataprep.hpp"
#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

struct EntropyResult {
  WeightVector weights;       // kind = objective
  Eigen::VectorXd entropies;  // e_j in [0, 1]
  Eigen::VectorXd diversity;  // d_j = 1 - e_j
};

/// Entropy weights from column proportions p_ij = z_ij / sum_i z_ij with
/// 0 ln 0 = 0. Uniform weights when every column is uninformative.
/// Throws InputError for fewer than two objects, values outside [0, 1],
/// or a column summing to zero.
EntropyResult entropy_weights(const NormalizedMatrix& z);

}  // namespace cloudmcdm
