#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cloudmcdm/cloud.hpp"
#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

/// Rows are indicators, columns are grade bands; each row sums to 1.
struct MembershipMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;
};

/// Triangular memberships with apex 1 at each band midpoint, falling to 0 at
/// the neighbouring midpoints; scores beyond the outer midpoints belong fully
/// to the outer band. Throws InputError for a score outside [0, 100].
Eigen::VectorXd triangular_memberships(double score, const GradeScheme& scheme);

MembershipMatrix membership_matrix(const std::vector<std::string>& ids, std::span<const double> scores,
                                   const GradeScheme& scheme);

struct FceResult {
  Eigen::VectorXd grade_memberships;  // b = w^T M
  double score = 0.0;                 // sum_k b_k * midpoint_k
};

/// Weighted-average composition followed by midpoint defuzzification.
/// Throws InputError on dimension mismatches.
FceResult fce_evaluate(const MembershipMatrix& m, const WeightVector& w, const GradeScheme& scheme);
double fce_score(const MembershipMatrix& m, const WeightVector& w, const GradeScheme& scheme);

}  // namespace cloudmcdm
