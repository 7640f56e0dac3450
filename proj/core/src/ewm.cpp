#include "cloudmcdm/ewm.hpp"

#include <algorithm>
#include <cmath>

#include "cloudmcdm/error.hpp"

namespace cloudmcdm {

EntropyResult entropy_weights(const NormalizedMatrix& z) {
  const Eigen::Index m = z.rows();
  const Eigen::Index n = z.cols();
  if (m < 2) throw InputError("entropy weights need at least two evaluation objects");
  if (n < 1) throw InputError("entropy weights need at least one indicator");
  if ((z.values.array() < 0.0).any() || (z.values.array() > 1.0).any() || !z.values.allFinite()) {
    throw InputError("entropy weights expect normalized values in [0, 1]");
  }

  const double inv_log_m = 1.0 / std::log(static_cast<double>(m));
  EntropyResult out;
  out.entropies.resize(n);
  out.diversity.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double total = z.values.col(j).sum();
    if (!(total > 0.0)) {
      const auto name = j < static_cast<Eigen::Index>(z.indicator_ids.size()) ? z.indicator_ids[j] : std::to_string(j);
      throw InputError("entropy weights: column '" + name + "' sums to zero");
    }
    if (z.values.col(j).maxCoeff() == z.values.col(j).minCoeff()) {
      out.entropies(j) = 1.0;
      out.diversity(j) = 0.0;
      continue;
    }
    double h = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double p = z.values(i, j) / total;
      if (p > 0.0) h -= p * std::log(p);
    }
    // Clamp rounding excursions so e_j stays in [0, 1].
    const double e = std::clamp(h * inv_log_m, 0.0, 1.0);
    out.entropies(j) = e;
    out.diversity(j) = 1.0 - e;
  }

  Eigen::VectorXd w(n);
  const double total = out.diversity.sum();
  if (total > 0.0) {
    w = out.diversity / total;
  } else {
    w.setConstant(1.0 / static_cast<double>(n));
  }
  out.weights = {z.indicator_ids, std::move(w), WeightKind::kObjective};
  if (static_cast<Eigen::Index>(out.weights.ids.size()) != n) {
    out.weights.ids.clear();
    for (Eigen::Index j = 0; j < n; ++j) out.weights.ids.push_back(std::to_string(j + 1));
  }
  return out;
}

}  // namespace cloudmcdm
