#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cloudmcdm {

enum class WeightKind { kSubjective, kObjective, kCombined };

std::string_view to_string(WeightKind kind);

/// Nonnegative weights summing to one, labelled by indicator (or criterion) id.
struct WeightVector {
  std::vector<std::string> ids;
  Eigen::VectorXd weights;
  WeightKind kind = WeightKind::kCombined;

  Eigen::Index size() const { return weights.size(); }
};

inline constexpr double kSimplexTolerance = 1e-9;

bool on_simplex(const Eigen::VectorXd& w, double tol = kSimplexTolerance);

/// Throws Error if `w` is off the simplex or its id list has the wrong length.
void check_simplex(const WeightVector& w, std::string_view what);

}  // namespace cloudmcdm
