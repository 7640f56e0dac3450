#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cloudmcdm/weights.hpp"

namespace cloudmcdm {

/// Normal cloud on the 0-100 score scale: expectation, entropy, hyper-entropy.
struct CloudParams {
  double ex = 0.0;
  double en = 0.0;
  double he = 0.0;

  bool operator==(const CloudParams&) const = default;
};

/// Throws InputError unless ex is finite and en, he are finite and >= 0.
void validate(const CloudParams& c);

struct Droplet {
  double x = 0.0;
  double mu = 0.0;
};

struct DropletSet {
  std::vector<Droplet> droplets;
  std::uint64_t seed = 0;
  CloudParams source;
  std::vector<double> entropy_draws;  // per-droplet En', only when requested
};

/// Droplets are generated in fixed-size blocks; block b draws from
/// NormalSource(derive_seed(seed, b)).
inline constexpr std::size_t kDropletBlock = 4096;

struct ForwardOptions {
  unsigned threads = 1;
  bool keep_entropy_draws = false;
};

/// Forward normal cloud generator. Per droplet: En' ~ N(En, He^2) redrawn
/// until positive (En' = En when He = 0), x ~ N(Ex, En'^2),
/// mu = exp(-(x - Ex)^2 / (2 En'^2)). En = He = 0 gives (Ex, 1) droplets.
/// The result depends only on (c, n, seed), never on options.threads.
/// Throws InputError for n = 0 or En = 0 with He > 0.
DropletSet forward_cloud(const CloudParams& c, std::size_t n, std::uint64_t seed, const ForwardOptions& options = {});

inline constexpr std::size_t kMinBackwardSamples = 10;

struct BackwardEstimate {
  CloudParams params;
  bool he_clamped = false;  // S^2 < En^2, He reported as 0
};

/// Moment estimator without membership values:
/// Ex = mean, En = sqrt(pi/2) * mean |x - Ex|, He = sqrt(max(0, S^2 - En^2)).
/// Throws InputError for fewer than 10 samples.
BackwardEstimate backward_cloud(std::span<const double> samples);

/// Cloud of one indicator from its ratings (backward generator).
BackwardEstimate indicator_cloud(std::span<const double> ratings);

struct GradeBand {
  std::string label;
  double lower = 0.0;
  double upper = 0.0;

  double midpoint() const { return 0.5 * (lower + upper); }
  bool operator==(const GradeBand&) const = default;
};

struct GradeScheme {
  std::vector<GradeBand> bands;  // ascending, contiguous, covering [0, 100]
  double he_ratio = 0.1;

  bool operator==(const GradeScheme&) const = default;
};

inline constexpr double kScoreMin = 0.0;
inline constexpr double kScoreMax = 100.0;

/// poor [0,60], fair [60,75], good [75,85], excellent [85,100], He = En / 10.
GradeScheme default_grade_scheme();

/// Throws InputError on gaps, overlaps, empty or duplicate labels, bands
/// not covering [0, 100], or he_ratio <= 0.
void validate(const GradeScheme& scheme);

/// Either a JSON array of {"label","lower","upper"} or an object
/// {"he_ratio": r, "bands": [...]}. The result is validated.
GradeScheme parse_grade_scheme_json(std::string_view text, const std::string& source = "<scheme>");
GradeScheme load_grade_scheme(const std::string& path);
std::string grade_scheme_to_json(const GradeScheme& scheme);

/// Ex = band midpoint, En = width / 6, He = he_ratio * En.
CloudParams grade_cloud(double lower, double upper, double he_ratio);
std::vector<CloudParams> grade_clouds(const GradeScheme& scheme);

enum class AggregationStrategy {
  kLinear,     // weighted mean of Ex, En and He
  kQuadratic,  // weighted mean Ex; En, He as sqrt(sum w^2 x^2)
};

std::string_view to_string(AggregationStrategy s);
AggregationStrategy parse_aggregation_strategy(std::string_view s);

/// Throws InputError on a length mismatch or weights off the simplex.
CloudParams aggregate_clouds(std::span<const CloudParams> children, const Eigen::VectorXd& weights,
                             AggregationStrategy strategy = AggregationStrategy::kLinear);
CloudParams aggregate_clouds(std::span<const CloudParams> children, const WeightVector& weights,
                             AggregationStrategy strategy = AggregationStrategy::kLinear);

inline constexpr std::size_t kMinSimilarityDroplets = 1000;

/// Mean expectation-curve membership under `reference` of n droplets drawn
/// from `source`. Throws InputError when reference.en = 0 and the clouds differ.
double directed_similarity(const CloudParams& source, const CloudParams& reference, std::size_t n, std::uint64_t seed);

/// Average of both directions when both entropies are positive (direction
/// a->b on stream 0 of `seed`, b->a on stream 1), otherwise the a->b
/// direction alone. Throws InputError for n < 1000 or a degenerate b.
double cloud_similarity(const CloudParams& a, const CloudParams& b, std::size_t n, std::uint64_t seed);

struct GradeAssignment {
  std::string label;
  std::size_t band_index = 0;
  std::vector<double> similarities;  // one per band, scheme order
};

/// Maximum-similarity grade. Similarities within a relative 1e-12 of the
/// running maximum count as ties, and ties go to the higher band.
GradeAssignment assign_grade(const CloudParams& c, const GradeScheme& scheme, std::size_t n, std::uint64_t seed);

}  // namespace cloudmcdm
