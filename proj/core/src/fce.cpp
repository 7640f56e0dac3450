#include "cloudmcdm/fce.hpp"

#include <cmath>

#include "cloudmcdm/error.hpp"

namespace cloudmcdm {

Eigen::VectorXd triangular_memberships(double score, const GradeScheme& scheme) {
  if (!(score >= kScoreMin && score <= kScoreMax)) {
    throw InputError("FCE score " + std::to_string(score) + " is outside [0, 100]");
  }
  const auto k = static_cast<Eigen::Index>(scheme.bands.size());
  Eigen::VectorXd row = Eigen::VectorXd::Zero(k);
  if (score <= scheme.bands.front().midpoint()) {
    row(0) = 1.0;
    return row;
  }
  if (score >= scheme.bands.back().midpoint()) {
    row(k - 1) = 1.0;
    return row;
  }
  for (Eigen::Index b = 0; b + 1 < k; ++b) {
    const double lo = scheme.bands[static_cast<std::size_t>(b)].midpoint();
    const double hi = scheme.bands[static_cast<std::size_t>(b) + 1].midpoint();
    if (score >= lo && score <= hi) {
      row(b) = (hi - score) / (hi - lo);
      row(b + 1) = (score - lo) / (hi - lo);
      break;
    }
  }
  return row / row.sum();
}

MembershipMatrix membership_matrix(const std::vector<std::string>& ids, std::span<const double> scores,
                                   const GradeScheme& scheme) {
  if (ids.size() != scores.size()) throw InputError("membership_matrix: ids and scores differ in length");
  validate(scheme);
  MembershipMatrix m{ids, Eigen::MatrixXd(static_cast<Eigen::Index>(scores.size()),
                                          static_cast<Eigen::Index>(scheme.bands.size()))};
  for (std::size_t i = 0; i < scores.size(); ++i) {
    m.values.row(static_cast<Eigen::Index>(i)) = triangular_memberships(scores[i], scheme).transpose();
  }
  return m;
}

FceResult fce_evaluate(const MembershipMatrix& m, const WeightVector& w, const GradeScheme& scheme) {
  if (m.values.rows() != w.size()) {
    throw InputError("FCE: " + std::to_string(m.values.rows()) + " membership rows for " + std::to_string(w.size()) + " weights");
  }
  if (m.values.cols() != static_cast<Eigen::Index>(scheme.bands.size())) {
    throw InputError("FCE: membership columns do not match the grade scheme");
  }
  FceResult out;
  out.grade_memberships = m.values.transpose() * w.weights;
  Eigen::VectorXd mids(static_cast<Eigen::Index>(scheme.bands.size()));
  for (std::size_t k = 0; k < scheme.bands.size(); ++k) mids(static_cast<Eigen::Index>(k)) = scheme.bands[k].midpoint();
  out.score = out.grade_memberships.dot(mids);
  return out;
}

double fce_score(const MembershipMatrix& m, const WeightVector& w, const GradeScheme& scheme) {
  return fce_evaluate(m, w, scheme).score;
}

}  // namespace cloudmcdm
