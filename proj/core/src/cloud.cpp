#include "cloudmcdm/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "cloudmcdm/error.hpp"
#include "cloudmcdm/random.hpp"
#include "io_util.hpp"

namespace cloudmcdm {

void validate(const CloudParams& c) {
  if (!std::isfinite(c.ex)) throw InputError("cloud Ex must be finite");
  if (!std::isfinite(c.en) || c.en < 0.0) throw InputError("cloud En must be finite and nonnegative");
  if (!std::isfinite(c.he) || c.he < 0.0) throw InputError("cloud He must be finite and nonnegative");
}

namespace {

void fill_block(const CloudParams& c, std::uint64_t seed, std::size_t block, DropletSet& out, bool keep_entropy) {
  const std::size_t begin = block * kDropletBlock;
  const std::size_t end = std::min(out.droplets.size(), begin + kDropletBlock);
  NormalSource rng(derive_seed(seed, block));
  for (std::size_t k = begin; k < end; ++k) {
    double en = c.en;
    if (c.he > 0.0) {
      do {
        en = rng.normal(c.en, c.he);
      } while (!(en > 0.0));
    }
    const double x = rng.normal(c.ex, en);
    const double z = (x - c.ex) / en;
    out.droplets[k] = {x, std::exp(-0.5 * z * z)};
    if (keep_entropy) out.entropy_draws[k] = en;
  }
}

}  // namespace

DropletSet forward_cloud(const CloudParams& c, std::size_t n, std::uint64_t seed, const ForwardOptions& options) {
  validate(c);
  if (n == 0) throw InputError("forward_cloud: droplet count must be positive");
  if (c.en == 0.0 && c.he > 0.0) throw InputError("forward_cloud: En = 0 with He > 0 has no membership curve");

  DropletSet out;
  out.seed = seed;
  out.source = c;
  if (c.en == 0.0) {
    out.droplets.assign(n, Droplet{c.ex, 1.0});
    if (options.keep_entropy_draws) out.entropy_draws.assign(n, 0.0);
    return out;
  }

  out.droplets.resize(n);
  if (options.keep_entropy_draws) out.entropy_draws.resize(n);
  const std::size_t blocks = (n + kDropletBlock - 1) / kDropletBlock;
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, blocks);
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) fill_block(c, seed, b, out, options.keep_entropy_draws);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < blocks; b += workers) fill_block(c, seed, b, out, options.keep_entropy_draws);
    });
  }
  return out;
}

BackwardEstimate backward_cloud(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < kMinBackwardSamples) {
    throw InputError("backward_cloud: need at least " + std::to_string(kMinBackwardSamples) + " samples, got " +
                     std::to_string(n));
  }
  double sum = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x)) throw InputError("backward_cloud: non-finite sample");
    sum += x;
  }
  const double mean = sum / static_cast<double>(n);
  double abs_dev = 0.0;
  double sq_dev = 0.0;
  for (double x : samples) {
    abs_dev += std::abs(x - mean);
    sq_dev += (x - mean) * (x - mean);
  }
  BackwardEstimate out;
  out.params.ex = mean;
  out.params.en = std::sqrt(std::numbers::pi / 2.0) * abs_dev / static_cast<double>(n);
  const double variance = sq_dev / static_cast<double>(n - 1);
  const double he_sq = variance - out.params.en * out.params.en;
  if (he_sq < 0.0) {
    out.he_clamped = true;
    out.params.he = 0.0;
  } else {
    out.params.he = std::sqrt(he_sq);
  }
  return out;
}

BackwardEstimate indicator_cloud(std::span<const double> ratings) { return backward_cloud(ratings); }

GradeScheme default_grade_scheme() {
  return {{{"poor", 0.0, 60.0}, {"fair", 60.0, 75.0}, {"good", 75.0, 85.0}, {"excellent", 85.0, 100.0}}, 0.1};
}

void validate(const GradeScheme& scheme) {
  if (scheme.bands.empty()) throw InputError("grade scheme has no bands");
  if (!(scheme.he_ratio > 0.0) || !std::isfinite(scheme.he_ratio)) throw InputError("grade scheme he_ratio must be positive");
  std::set<std::string> labels;
  for (std::size_t k = 0; k < scheme.bands.size(); ++k) {
    const auto& band = scheme.bands[k];
    if (band.label.empty()) throw InputError("grade band " + std::to_string(k + 1) + " has an empty label");
    if (!labels.insert(band.label).second) throw InputError("grade label '" + band.label + "' is repeated");
    if (!(band.lower < band.upper)) throw InputError("grade band '" + band.label + "' needs lower < upper");
    if (k > 0 && band.lower != scheme.bands[k - 1].upper) {
      throw InputError("grade band '" + band.label + "' does not start where '" + scheme.bands[k - 1].label + "' ends");
    }
  }
  if (scheme.bands.front().lower != kScoreMin || scheme.bands.back().upper != kScoreMax) {
    throw InputError("grade bands must cover [0, 100]");
  }
}

GradeScheme parse_grade_scheme_json(std::string_view text, const std::string& source) {
  using nlohmann::json;
  GradeScheme scheme;
  try {
    const json doc = json::parse(text);
    const json* bands = &doc;
    if (doc.is_object()) {
      scheme.he_ratio = doc.value("he_ratio", 0.1);
      if (!doc.contains("bands")) throw InputError(source + ": missing \"bands\"");
      bands = &doc.at("bands");
    }
    if (!bands->is_array()) throw InputError(source + ": bands must be a JSON array");
    for (const auto& b : *bands) {
      scheme.bands.push_back({b.at("label").get<std::string>(), b.at("lower").get<double>(), b.at("upper").get<double>()});
    }
  } catch (const json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  try {
    validate(scheme);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return scheme;
}

GradeScheme load_grade_scheme(const std::string& path) {
  return parse_grade_scheme_json(detail::read_text_file(path), path);
}

std::string grade_scheme_to_json(const GradeScheme& scheme) {
  nlohmann::ordered_json doc;
  doc["he_ratio"] = scheme.he_ratio;
  doc["bands"] = nlohmann::ordered_json::array();
  for (const auto& b : scheme.bands) {
    doc["bands"].push_back({{"label", b.label}, {"lower", b.lower}, {"upper", b.upper}});
  }
  return doc.dump(2);
}

CloudParams grade_cloud(double lower, double upper, double he_ratio) {
  if (!(lower < upper)) throw InputError("grade_cloud: lower must be below upper");
  const double en = (upper - lower) / 6.0;
  return {0.5 * (lower + upper), en, he_ratio * en};
}

std::vector<CloudParams> grade_clouds(const GradeScheme& scheme) {
  std::vector<CloudParams> out;
  out.reserve(scheme.bands.size());
  for (const auto& b : scheme.bands) out.push_back(grade_cloud(b.lower, b.upper, scheme.he_ratio));
  return out;
}

std::string_view to_string(AggregationStrategy s) {
  return s == AggregationStrategy::kLinear ? "linear" : "quadratic";
}

AggregationStrategy parse_aggregation_strategy(std::string_view s) {
  if (s == "linear") return AggregationStrategy::kLinear;
  if (s == "quadratic") return AggregationStrategy::kQuadratic;
  throw InputError("unknown aggregation strategy '" + std::string(s) + "' (expected linear or quadratic)");
}

CloudParams aggregate_clouds(std::span<const CloudParams> children, const Eigen::VectorXd& weights,
                             AggregationStrategy strategy) {
  if (static_cast<Eigen::Index>(children.size()) != weights.size()) {
    throw InputError("aggregate_clouds: " + std::to_string(children.size()) + " clouds for " +
                     std::to_string(weights.size()) + " weights");
  }
  if (!on_simplex(weights)) throw InputError("aggregate_clouds: weights are not on the simplex");

  CloudParams out;
  double en_sq = 0.0;
  double he_sq = 0.0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const double w = weights(static_cast<Eigen::Index>(i));
    const auto& c = children[i];
    out.ex += w * c.ex;
    if (strategy == AggregationStrategy::kLinear) {
      out.en += w * c.en;
      out.he += w * c.he;
    } else {
      en_sq += w * w * c.en * c.en;
      he_sq += w * w * c.he * c.he;
    }
  }
  if (strategy == AggregationStrategy::kQuadratic) {
    out.en = std::sqrt(en_sq);
    out.he = std::sqrt(he_sq);
  }
  return out;
}

CloudParams aggregate_clouds(std::span<const CloudParams> children, const WeightVector& weights,
                             AggregationStrategy strategy) {
  return aggregate_clouds(children, weights.weights, strategy);
}

double directed_similarity(const CloudParams& source, const CloudParams& reference, std::size_t n, std::uint64_t seed) {
  validate(reference);
  if (reference.en == 0.0) {
    if (source == reference) return 1.0;
    throw InputError("similarity: reference cloud has En = 0");
  }
  const auto drops = forward_cloud(source, n, seed);
  const double inv = 1.0 / (2.0 * reference.en * reference.en);
  double total = 0.0;
  for (const auto& d : drops.droplets) {
    const double dx = d.x - reference.ex;
    total += std::exp(-dx * dx * inv);
  }
  return total / static_cast<double>(n);
}

double cloud_similarity(const CloudParams& a, const CloudParams& b, std::size_t n, std::uint64_t seed) {
  if (n < kMinSimilarityDroplets) {
    throw InputError("similarity needs at least " + std::to_string(kMinSimilarityDroplets) + " droplets");
  }
  validate(a);
  validate(b);
  const double forward = directed_similarity(a, b, n, derive_seed(seed, 0));
  if (a.en > 0.0 && b.en > 0.0) {
    const double backward = directed_similarity(b, a, n, derive_seed(seed, 1));
    return 0.5 * (forward + backward);
  }
  return forward;
}

GradeAssignment assign_grade(const CloudParams& c, const GradeScheme& scheme, std::size_t n, std::uint64_t seed) {
  validate(scheme);
  GradeAssignment out;
  const auto clouds = grade_clouds(scheme);
  double best = -1.0;
  for (std::size_t k = 0; k < clouds.size(); ++k) {
    const double s = cloud_similarity(c, clouds[k], n, seed);
    out.similarities.push_back(s);
    if (s >= best - 1e-12 * std::max(1.0, std::abs(best))) {
      best = std::max(best, s);
      out.band_index = k;
    }
  }
  out.label = scheme.bands[out.band_index].label;
  return out;
}

}  // namespace cloudmcdm
