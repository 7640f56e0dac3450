#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cloudmcdm/error.hpp"
#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

inline constexpr int kMinJudgmentOrder = 2;
inline constexpr int kMaxJudgmentOrder = 15;
inline constexpr double kReciprocityTolerance = 1e-9;

/// The 17 admissible comparison values 1/9 ... 1 ... 9, ascending.
inline constexpr std::array<double, 17> kSaatyScale = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};

/// Preference value paired with each entry of kSaatyScale.
inline constexpr std::array<double, 17> kPreferenceScale = {
    0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9};

/// Index into kSaatyScale of `value`, if it is within 1e-9 of a scale value.
std::optional<std::size_t> scale_index(double value);

/// Positive reciprocal pairwise comparison matrix: r_ii = 1, r_ij * r_ji = 1.
/// Entries may be continuous (e.g. after repair); on-scale values are only
/// required by to_preference.
class JudgmentMatrix {
 public:
  /// Throws InputError if the matrix is not square, has order outside
  /// [2, 15], or breaks positivity, the unit diagonal, or reciprocity.
  explicit JudgmentMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index order() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

/// Complementary preference relation: r_ii = 0.5, r_ij + r_ji = 1, entries in (0, 1).
class PreferenceRelation {
 public:
  explicit PreferenceRelation(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index order() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

enum class DistanceNorm {
  kFrobenius,        // sqrt of the sum of squared cell differences
  kOffDiagonalRms,   // Frobenius / sqrt(n(n-1)); comparable across orders
};

struct RepairConfig {
  double sigma = 0.8;
  double tau = 0.1;
  int max_iter = 20;
  double cr_threshold = 0.1;
  DistanceNorm norm = DistanceNorm::kFrobenius;
  bool keep_relations = false;

  /// Throws InputError unless 0 < sigma < 1, tau > 0 and max_iter >= 0.
  void validate() const;
};

struct RepairTrace {
  std::vector<double> distances;               // d(P_k, reference(P_k)) per pass, in order
  std::vector<Eigen::MatrixXd> relations;      // P_k, only with keep_relations
  int repairs = 0;                             // repair steps applied
  double initial_cr = 0.0;
  double final_cr = 0.0;
};

class RepairError : public ConvergenceError {
 public:
  RepairError(const std::string& what, RepairTrace trace)
      : ConvergenceError(what), trace_(std::move(trace)) {}
  const RepairTrace& trace() const { return trace_; }

 private:
  RepairTrace trace_;
};

struct RepairResult {
  JudgmentMatrix matrix;
  RepairTrace trace;
};

struct ConsistencyResult {
  double lambda_max = 0.0;
  double ci = 0.0;
  double cr = 0.0;
};

/// Random consistency index for order n (0 for n <= 2).
double random_index(Eigen::Index n);

/// Table mapping, cell by cell. Throws InputError naming the first off-scale cell.
PreferenceRelation to_preference(const JudgmentMatrix& j);

/// Piecewise-linear inverse of the table on the upper triangle, with the
/// lower triangle set to exact reciprocals. Values beyond the end knots
/// continue the outermost segment (see README).
JudgmentMatrix from_preference(const PreferenceRelation& p);

/// Scalar form of from_preference for a single upper-triangle value.
double preference_to_judgment(double p);

/// Reference relation: entries above the superdiagonal are rebuilt from the
/// normalized geometric mean of the intermediate chains i -> t -> j.
PreferenceRelation consistent_reference(const PreferenceRelation& p);

/// Throws InputError on order mismatch.
double preference_distance(const PreferenceRelation& p, const PreferenceRelation& q,
                           DistanceNorm norm = DistanceNorm::kFrobenius);

/// Elementwise weighted geometric interpolation from `p` (sigma = 0) to
/// `reference` (sigma = 1). Complementarity is preserved.
PreferenceRelation repair_step(const PreferenceRelation& p, const PreferenceRelation& reference, double sigma);

/// Repairs until d(P, reference(P)) < tau and the reverse-transformed matrix
/// has CR below cfg.cr_threshold. A matrix that already passes is returned
/// unchanged. Throws RepairError (with the trace) when max_iter repairs do not suffice.
RepairResult auto_correct(const JudgmentMatrix& j, const RepairConfig& cfg = {});

ConsistencyResult consistency_ratio(const JudgmentMatrix& j);

/// Perron eigenvector normalized to sum 1. With `enforce_consistency`,
/// throws InputError when CR >= 0.1. Ids default to "1".."n".
WeightVector principal_weights(const JudgmentMatrix& j, std::vector<std::string> ids = {},
                               bool enforce_consistency = false);

/// CSV of n rows by n cells; cells are decimals or "a/b" fractions.
/// Optionally labelled: a header row starting with an empty cell, and a
/// label in front of every row matching the header. Labels go to *labels.
JudgmentMatrix parse_judgment_csv(std::string_view text, const std::string& source = "<judgment>",
                                  std::vector<std::string>* labels = nullptr);
JudgmentMatrix load_judgment_csv(const std::string& path, std::vector<std::string>* labels = nullptr);

}  // namespace cloudmcdm
