#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudmcdm/cloud.hpp"
#include "cloudmcdm/dataprep.hpp"
#include "cloudmcdm/hierarchy.hpp"
#include "cloudmcdm/iahp.hpp"
#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

inline constexpr std::uint64_t kDefaultSeed = 20250101;
inline constexpr const char* kSeedEnvVar = "CLOUDMCDM_SEED";

/// Everything one evaluation needs. Paths are resolved against the directory
/// of the config file.
struct EvaluationConfig {
  std::string scenario;
  std::string hierarchy_path;
  std::string scheme_path;  // empty: default scheme
  std::string data_path;
  std::string criteria_judgment_path;                      // criterion layer
  std::map<std::string, std::string> indicator_judgments;  // criterion id -> file
  std::optional<std::uint64_t> seed;
  std::size_t similarity_droplets = 20000;
  std::size_t export_droplets = 3000;
  AggregationStrategy aggregation = AggregationStrategy::kLinear;
  RepairConfig repair;
  bool repair_enabled = true;
  bool enforce_consistency = true;
};

/// Throws InputError for malformed JSON, missing keys, or bad values.
EvaluationConfig parse_config_json(std::string_view text, const std::string& base_dir,
                                   const std::string& source = "<config>");
EvaluationConfig load_config(const std::string& path);

/// Command-line flag, then the config's "seed", then $CLOUDMCDM_SEED, then
/// kDefaultSeed. A malformed environment value throws InputError.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config_seed,
                           const char* env_value);

struct RepairSummary {
  std::string source;
  int repairs = 0;
  double initial_cr = 0.0;
  double final_cr = 0.0;
  std::vector<double> distances;
  Eigen::MatrixXd matrix;  // judgment matrix used for the weights
};

/// Weights of one sibling group: the criteria under the root, or the
/// indicators under one criterion.
struct LayerWeights {
  std::string parent_id;
  WeightVector subjective;
  WeightVector objective;
  WeightVector combined;
  std::array<double, 2> theta{};
  double objective_value = 0.0;
  bool fallback = false;
  std::optional<RepairSummary> repair;  // absent for single-child groups
};

struct LevelCloud {
  std::string id;
  Layer layer = Layer::kIndicator;
  CloudParams cloud;
  bool he_clamped = false;  // backward estimate clamped (indicators only)
};

struct LevelGrade {
  std::string id;
  GradeAssignment grade;
};

struct FceSummary {
  double score = 0.0;
  std::vector<double> grade_memberships;
  double gap = 0.0;  // |score - comprehensive Ex|
};

struct HierarchyOutline {
  std::string root_id;
  std::vector<std::pair<std::string, std::vector<std::string>>> criteria;  // id -> leaves

  bool operator==(const HierarchyOutline&) const = default;
};

struct EvaluationReport {
  std::string tool_version;
  std::string scenario;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double tau = 0.0;
  int max_iter = 0;
  AggregationStrategy aggregation = AggregationStrategy::kLinear;
  std::size_t similarity_droplets = 0;
  HierarchyOutline hierarchy;
  GradeScheme scheme;
  std::size_t objects = 0;

  LayerWeights criterion_weights;
  std::vector<LayerWeights> indicator_weights;  // one per criterion, hierarchy order
  WeightVector global_subjective;
  WeightVector global_objective;
  WeightVector global_combined;

  std::vector<LevelCloud> indicator_clouds;
  std::vector<LevelCloud> criterion_clouds;
  LevelCloud comprehensive;
  std::vector<LevelGrade> grades;  // comprehensive first, then criteria
  FceSummary fce;
  std::vector<std::string> warnings;

  const LevelCloud& level(const std::string& id) const;
};

/// Pipeline inputs after loading and validation.
struct LoadedInputs {
  EvaluationConfig config;
  IndexHierarchy hierarchy;
  GradeScheme scheme;
  DataMatrix data;  // columns in leaf order
  std::optional<JudgmentMatrix> criteria_judgment;
  std::map<std::string, JudgmentMatrix> indicator_judgments;
};

/// Loads and cross-checks every referenced file. Errors name the file and cell.
LoadedInputs load_inputs(const EvaluationConfig& config);

/// hierarchy -> dataprep -> iahp -> ewm -> combiner -> cloud -> fce.
EvaluationReport evaluate(const LoadedInputs& inputs, std::uint64_t seed);

/// Seed of the similarity table of a level (root, criterion or indicator id).
/// Throws InputError for an unknown id.
std::uint64_t level_seed(const EvaluationReport& report, const std::string& level_id);

/// Seed of the exported droplets of a level; independent of level_seed.
std::uint64_t export_seed(const EvaluationReport& report, const std::string& level_id);

/// Converts a data value to the cloud rating scale (cost values are mirrored).
double oriented_rating(double value, Direction direction);

/// Throws Error if any weight table is off the simplex.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view text, const std::string& source = "<report>");
EvaluationReport load_report(const std::string& path);

struct LevelDelta {
  std::string id;
  Layer layer = Layer::kObjective;
  CloudParams before;
  CloudParams after;
  double d_ex = 0.0;
  double d_en = 0.0;
  double d_he = 0.0;
};

struct ScenarioComparison {
  std::string before;
  std::string after;
  std::vector<LevelDelta> levels;  // comprehensive first, then criteria
  bool ex_increased = false;
  bool en_decreased = false;
  bool he_decreased = false;
};

/// Per-level deltas (b - a). Throws InputError when the reports disagree
/// on hierarchy or grade scheme.
ScenarioComparison compare_scenarios(const EvaluationReport& a, const EvaluationReport& b);
std::string comparison_to_json(const ScenarioComparison& c);

}  // namespace cloudmcdm
