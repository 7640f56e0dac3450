#include "cloudmcdm/weights.hpp"

#include <cmath>

#include "cloudmcdm/error.hpp"

namespace cloudmcdm {

std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::kSubjective: return "subjective";
    case WeightKind::kObjective: return "objective";
    case WeightKind::kCombined: return "combined";
  }
  return "?";
}

bool on_simplex(const Eigen::VectorXd& w, double tol) {
  if (w.size() == 0) return false;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w(i)) || w(i) < -tol) return false;
  }
  return std::abs(w.sum() - 1.0) <= tol;
}

void check_simplex(const WeightVector& w, std::string_view what) {
  if (static_cast<Eigen::Index>(w.ids.size()) != w.weights.size()) {
    throw Error(std::string(what) + ": " + std::to_string(w.ids.size()) + " ids for " +
                std::to_string(w.weights.size()) + " weights");
  }
  if (!on_simplex(w.weights)) throw Error(std::string(what) + ": weights are not on the simplex");
}

}  // namespace cloudmcdm
