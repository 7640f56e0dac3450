#include "cloudmcdm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "cloudmcdm/combiner.hpp"
#include "cloudmcdm/error.hpp"
#include "cloudmcdm/ewm.hpp"
#include "cloudmcdm/fce.hpp"
#include "cloudmcdm/random.hpp"
#include "cloudmcdm/version.hpp"
#include "io_util.hpp"

namespace cloudmcdm {

using ojson = nlohmann::ordered_json;

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_absolute() || base_dir.empty()) return path.lexically_normal().string();
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (v > (UINT64_MAX - digit) / 10) return std::nullopt;
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace

EvaluationConfig parse_config_json(std::string_view text, const std::string& base_dir, const std::string& source) {
  EvaluationConfig cfg;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw InputError(source + ": config must be a JSON object");
    auto required = [&](const char* key) {
      if (!doc.contains(key) || !doc[key].is_string()) throw InputError(source + ": missing string \"" + std::string(key) + "\"");
      return resolve_path(base_dir, doc[key].get<std::string>());
    };
    cfg.scenario = doc.value("scenario", std::string("scenario"));
    cfg.hierarchy_path = required("hierarchy");
    cfg.data_path = required("data");
    if (doc.contains("scheme")) cfg.scheme_path = resolve_path(base_dir, doc["scheme"].get<std::string>());

    if (doc.contains("judgments")) {
      const auto& j = doc["judgments"];
      if (j.contains("criteria")) cfg.criteria_judgment_path = resolve_path(base_dir, j["criteria"].get<std::string>());
      if (j.contains("indicators")) {
        for (const auto& [crit, path] : j["indicators"].items()) {
          cfg.indicator_judgments[crit] = resolve_path(base_dir, path.get<std::string>());
        }
      }
    }
    if (doc.contains("seed")) {
      const auto& s = doc["seed"];
      if (s.is_number_unsigned()) cfg.seed = s.get<std::uint64_t>();
      else if (s.is_number_integer() && s.get<std::int64_t>() >= 0) cfg.seed = static_cast<std::uint64_t>(s.get<std::int64_t>());
      else throw InputError(source + ": \"seed\" must be a nonnegative integer");
    }
    cfg.similarity_droplets = doc.value("similarity_droplets", cfg.similarity_droplets);
    cfg.export_droplets = doc.value("export_droplets", cfg.export_droplets);
    if (doc.contains("aggregation")) cfg.aggregation = parse_aggregation_strategy(doc["aggregation"].get<std::string>());
    cfg.enforce_consistency = doc.value("enforce_consistency", cfg.enforce_consistency);
    if (doc.contains("repair")) {
      const auto& r = doc["repair"];
      cfg.repair_enabled = r.value("enabled", cfg.repair_enabled);
      cfg.repair.sigma = r.value("sigma", cfg.repair.sigma);
      cfg.repair.tau = r.value("tau", cfg.repair.tau);
      cfg.repair.max_iter = r.value("max_iter", cfg.repair.max_iter);
      const auto norm = r.value("distance", std::string("frobenius"));
      if (norm == "frobenius") cfg.repair.norm = DistanceNorm::kFrobenius;
      else if (norm == "rms") cfg.repair.norm = DistanceNorm::kOffDiagonalRms;
      else throw InputError(source + ": repair.distance must be \"frobenius\" or \"rms\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  if (cfg.similarity_droplets < kMinSimilarityDroplets) {
    throw InputError(source + ": similarity_droplets must be at least " + std::to_string(kMinSimilarityDroplets));
  }
  if (cfg.export_droplets == 0) throw InputError(source + ": export_droplets must be positive");
  try {
    cfg.repair.validate();
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return cfg;
}

EvaluationConfig load_config(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_config_json(detail::read_text_file(path), base, path);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config_seed,
                           const char* env_value) {
  if (flag) return *flag;
  if (config_seed) return *config_seed;
  if (env_value != nullptr && *env_value != '\0') {
    const auto v = parse_u64(env_value);
    if (!v) throw InputError(std::string(kSeedEnvVar) + " is not a nonnegative integer: '" + env_value + "'");
    return *v;
  }
  return kDefaultSeed;
}

const LevelCloud& EvaluationReport::level(const std::string& id) const {
  if (comprehensive.id == id) return comprehensive;
  for (const auto* group : {&criterion_clouds, &indicator_clouds}) {
    for (const auto& c : *group) {
      if (c.id == id) return c;
    }
  }
  throw InputError("no level '" + id + "' in the report");
}

double oriented_rating(double value, Direction direction) {
  return direction == Direction::kBenefit ? value : kScoreMax - value;
}

LoadedInputs load_inputs(const EvaluationConfig& config) {
  LoadedInputs in{config, load_hierarchy(config.hierarchy_path), default_grade_scheme(), {}, std::nullopt, {}};
  const auto report = validate_hierarchy(in.hierarchy);
  if (!report.ok()) {
    std::string msg = config.hierarchy_path + ": invalid hierarchy";
    for (const auto& v : report.violations) msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.message;
    throw InputError(msg);
  }
  if (!config.scheme_path.empty()) in.scheme = load_grade_scheme(config.scheme_path);

  const auto leaves = leaf_indicators(in.hierarchy);
  try {
    in.data = select_columns(load_data_csv(config.data_path), leaves);
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(config.data_path, 0) == 0) throw;
    throw InputError(config.data_path + ": " + what);
  }
  for (Eigen::Index i = 0; i < in.data.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < in.data.values.cols(); ++j) {
      const double v = in.data.values(i, j);
      if (v < kScoreMin || v > kScoreMax) {
        throw InputError(config.data_path + ": object '" + in.data.object_ids[static_cast<std::size_t>(i)] +
                         "', indicator '" + leaves[static_cast<std::size_t>(j)] + "': score " + std::to_string(v) +
                         " is outside [0, 100]");
      }
    }
  }

  auto load_matrix = [&](const std::string& path, const std::vector<std::string>& members, const std::string& group) {
    std::vector<std::string> labels;
    JudgmentMatrix m = load_judgment_csv(path, &labels);
    if (static_cast<std::size_t>(m.order()) != members.size()) {
      throw InputError(path + ": judgment matrix for '" + group + "' has order " + std::to_string(m.order()) +
                       " but the group has " + std::to_string(members.size()) + " members");
    }
    if (!labels.empty() && labels != members) {
      throw InputError(path + ": labels do not match the members of '" + group + "' in hierarchy order");
    }
    try {
      (void)to_preference(m);
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
    return m;
  };

  const auto criteria = in.hierarchy.criteria();
  if (criteria.size() >= 2) {
    if (config.criteria_judgment_path.empty()) throw InputError("config names no criterion-layer judgment matrix");
    in.criteria_judgment = load_matrix(config.criteria_judgment_path, criteria, in.hierarchy.root_id());
  }
  for (const auto& [crit, path] : config.indicator_judgments) {
    if (std::find(criteria.begin(), criteria.end(), crit) == criteria.end()) {
      throw InputError("config names a judgment matrix for unknown criterion '" + crit + "'");
    }
  }
  for (const auto& crit : criteria) {
    const auto leaves = leaf_indicators(in.hierarchy, crit);
    const auto n = leaves.size();
    const auto it = config.indicator_judgments.find(crit);
    if (n < 2) {
      if (it != config.indicator_judgments.end()) throw InputError(it->second + ": criterion '" + crit + "' has a single indicator");
      continue;
    }
    if (it == config.indicator_judgments.end()) throw InputError("config names no judgment matrix for criterion '" + crit + "'");
    in.indicator_judgments.emplace(crit, load_matrix(it->second, leaves, crit));
  }
  return in;
}

namespace {

WeightVector single_weight(const std::string& id, WeightKind kind) {
  return {{id}, Eigen::VectorXd::Ones(1), kind};
}

WeightVector subjective_weights(const JudgmentMatrix& j, const std::vector<std::string>& ids,
                                const EvaluationConfig& cfg, const std::string& source,
                                RepairSummary& summary, std::vector<std::string>& warnings) {
  summary.source = std::filesystem::path(source).filename().string();
  if (cfg.repair_enabled) {
    try {
      auto result = auto_correct(j, cfg.repair);
      summary.repairs = result.trace.repairs;
      summary.initial_cr = result.trace.initial_cr;
      summary.final_cr = result.trace.final_cr;
      summary.distances = result.trace.distances;
      summary.matrix = result.matrix.values();
      return principal_weights(result.matrix, ids);
    } catch (const RepairError& e) {
      throw RepairError(source + ": " + e.what(), e.trace());
    } catch (const InputError& e) {
      throw InputError(source + ": " + e.what());
    }
  }
  summary.initial_cr = summary.final_cr = consistency_ratio(j).cr;
  summary.matrix = j.values();
  if (summary.final_cr >= cfg.repair.cr_threshold) {
    const std::string msg = source + ": CR " + std::to_string(summary.final_cr) + " is not below " +
                            std::to_string(cfg.repair.cr_threshold);
    if (cfg.enforce_consistency) throw InputError(msg);
    warnings.push_back(msg);
  }
  return principal_weights(j, ids);
}

WeightVector restricted(const WeightVector& w, const std::vector<std::string>& ids, WeightKind kind) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto it = std::find(w.ids.begin(), w.ids.end(), ids[k]);
    out(static_cast<Eigen::Index>(k)) = w.weights(static_cast<Eigen::Index>(it - w.ids.begin()));
  }
  const double total = out.sum();
  if (total > 0.0) out /= total;
  else out.setConstant(1.0 / static_cast<double>(ids.size()));
  return {ids, std::move(out), kind};
}

constexpr std::uint64_t kExportStream = 0xE0;

}  // namespace

EvaluationReport evaluate(const LoadedInputs& in, std::uint64_t seed) {
  const auto& cfg = in.config;
  const auto& h = in.hierarchy;
  EvaluationReport r;
  r.tool_version = kVersion;
  r.scenario = cfg.scenario;
  r.seed = seed;
  r.sigma = cfg.repair.sigma;
  r.tau = cfg.repair.tau;
  r.max_iter = cfg.repair.max_iter;
  r.aggregation = cfg.aggregation;
  r.similarity_droplets = cfg.similarity_droplets;
  r.scheme = in.scheme;
  r.objects = static_cast<std::size_t>(in.data.values.rows());

  const auto criteria = h.criteria();
  const auto leaves = leaf_indicators(h);
  r.hierarchy.root_id = h.root_id();
  for (const auto& c : criteria) r.hierarchy.criteria.emplace_back(c, leaf_indicators(h, c));

  const auto directions = leaf_directions(h, leaves);
  const NormalizedMatrix z = min_max_normalize(in.data, directions);
  const auto entropy = entropy_weights(z);
  r.global_objective = entropy.weights;

  // Indicator groups: local weights per criterion, then the criterion-level
  // composite of each object.
  NormalizedMatrix composite{z.object_ids, criteria, Eigen::MatrixXd(z.rows(), static_cast<Eigen::Index>(criteria.size()))};
  Eigen::VectorXd criterion_objective(static_cast<Eigen::Index>(criteria.size()));
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto& group = r.hierarchy.criteria[c].second;
    LayerWeights lw;
    lw.parent_id = criteria[c];
    if (group.size() == 1) {
      lw.subjective = single_weight(group[0], WeightKind::kSubjective);
    } else {
      RepairSummary summary;
      lw.subjective = subjective_weights(in.indicator_judgments.at(criteria[c]), group, cfg,
                                         cfg.indicator_judgments.at(criteria[c]), summary, r.warnings);
      lw.repair = std::move(summary);
    }
    lw.objective = restricted(entropy.weights, group, WeightKind::kObjective);
    const auto zc = select_columns(z, group);
    const auto comb = combine_weights(lw.subjective, lw.objective, zc);
    lw.combined = comb.combined;
    lw.theta = comb.theta;
    lw.objective_value = comb.objective_value;
    lw.fallback = comb.fallback;

    composite.values.col(static_cast<Eigen::Index>(c)) = zc.values * lw.combined.weights;
    double share = 0.0;
    for (const auto& id : group) {
      const auto it = std::find(leaves.begin(), leaves.end(), id);
      share += entropy.weights.weights(static_cast<Eigen::Index>(it - leaves.begin()));
    }
    criterion_objective(static_cast<Eigen::Index>(c)) = share;
    r.indicator_weights.push_back(std::move(lw));
  }

  // Criterion layer.
  {
    LayerWeights& lw = r.criterion_weights;
    lw.parent_id = h.root_id();
    if (criteria.size() == 1) {
      lw.subjective = single_weight(criteria[0], WeightKind::kSubjective);
    } else {
      RepairSummary summary;
      lw.subjective = subjective_weights(*in.criteria_judgment, criteria, cfg, cfg.criteria_judgment_path, summary, r.warnings);
      lw.repair = std::move(summary);
    }
    const double total = criterion_objective.sum();
    if (total > 0.0) criterion_objective /= total;
    else criterion_objective.setConstant(1.0 / static_cast<double>(criteria.size()));
    lw.objective = {criteria, criterion_objective, WeightKind::kObjective};
    const auto comb = combine_weights(lw.subjective, lw.objective, composite);
    lw.combined = comb.combined;
    lw.theta = comb.theta;
    lw.objective_value = comb.objective_value;
    lw.fallback = comb.fallback;
  }

  // Global weights are products along the path root -> criterion -> leaf.
  Eigen::VectorXd gs(static_cast<Eigen::Index>(leaves.size()));
  Eigen::VectorXd gc(static_cast<Eigen::Index>(leaves.size()));
  Eigen::Index k = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto& lw = r.indicator_weights[c];
    for (Eigen::Index i = 0; i < lw.combined.size(); ++i, ++k) {
      gs(k) = r.criterion_weights.subjective.weights(static_cast<Eigen::Index>(c)) * lw.subjective.weights(i);
      gc(k) = r.criterion_weights.combined.weights(static_cast<Eigen::Index>(c)) * lw.combined.weights(i);
    }
  }
  r.global_subjective = {leaves, gs / gs.sum(), WeightKind::kSubjective};
  r.global_combined = {leaves, gc / gc.sum(), WeightKind::kCombined};

  // Clouds: indicators from their ratings, then two weighted stages.
  std::vector<double> mean_ratings;
  std::vector<double> ratings(static_cast<std::size_t>(in.data.values.rows()));
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      ratings[i] = oriented_rating(in.data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), directions[j]);
    }
    BackwardEstimate est;
    try {
      est = indicator_cloud(ratings);
    } catch (const InputError& e) {
      throw InputError(cfg.data_path + ": indicator '" + leaves[j] + "': " + e.what());
    }
    r.indicator_clouds.push_back({leaves[j], Layer::kIndicator, est.params, est.he_clamped});
    mean_ratings.push_back(est.params.ex);
  }
  std::size_t offset = 0;
  std::vector<CloudParams> criterion_params;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto& lw = r.indicator_weights[c];
    std::vector<CloudParams> children;
    for (Eigen::Index i = 0; i < lw.combined.size(); ++i) children.push_back(r.indicator_clouds[offset++].cloud);
    const auto cloud = aggregate_clouds(children, lw.combined, cfg.aggregation);
    r.criterion_clouds.push_back({criteria[c], Layer::kCriterion, cloud, false});
    criterion_params.push_back(cloud);
  }
  r.comprehensive = {h.root_id(), Layer::kObjective,
                     aggregate_clouds(criterion_params, r.criterion_weights.combined, cfg.aggregation), false};

  r.grades.push_back({r.comprehensive.id, assign_grade(r.comprehensive.cloud, r.scheme, cfg.similarity_droplets,
                                                       level_seed(r, r.comprehensive.id))});
  for (const auto& cc : r.criterion_clouds) {
    r.grades.push_back({cc.id, assign_grade(cc.cloud, r.scheme, cfg.similarity_droplets, level_seed(r, cc.id))});
  }

  const auto memberships = membership_matrix(leaves, mean_ratings, r.scheme);
  const auto fce = fce_evaluate(memberships, r.global_combined, r.scheme);
  r.fce.score = fce.score;
  r.fce.grade_memberships.assign(fce.grade_memberships.data(), fce.grade_memberships.data() + fce.grade_memberships.size());
  r.fce.gap = std::abs(fce.score - r.comprehensive.cloud.ex);
  return r;
}

std::uint64_t level_seed(const EvaluationReport& report, const std::string& level_id) {
  if (level_id == report.hierarchy.root_id) return derive_seed(report.seed, 0);
  std::uint64_t stream = 1;
  for (const auto& [crit, leaves] : report.hierarchy.criteria) {
    if (crit == level_id) return derive_seed(report.seed, stream);
    ++stream;
  }
  stream = 1000;
  for (const auto& [crit, leaves] : report.hierarchy.criteria) {
    for (const auto& leaf : leaves) {
      if (leaf == level_id) return derive_seed(report.seed, stream);
      ++stream;
    }
  }
  throw InputError("no level '" + level_id + "' in the hierarchy");
}

std::uint64_t export_seed(const EvaluationReport& report, const std::string& level_id) {
  return derive_seed(level_seed(report, level_id), kExportStream);
}

// ---------------------------------------------------------------------------
// Report serialization

namespace {

ojson vec_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vec_from(const ojson& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

ojson cloud_json(const CloudParams& c) { return {{"ex", c.ex}, {"en", c.en}, {"he", c.he}}; }
CloudParams cloud_from(const ojson& j) { return {j.at("ex").get<double>(), j.at("en").get<double>(), j.at("he").get<double>()}; }

ojson level_json(const LevelCloud& l) {
  ojson j = {{"id", l.id}, {"layer", std::string(to_string(l.layer))}};
  j.update(cloud_json(l.cloud));
  if (l.layer == Layer::kIndicator) j["he_clamped"] = l.he_clamped;
  return j;
}

Layer layer_from(const std::string& s) {
  if (s == "objective") return Layer::kObjective;
  if (s == "criterion") return Layer::kCriterion;
  if (s == "indicator") return Layer::kIndicator;
  throw InputError("unknown layer '" + s + "'");
}

LevelCloud level_from(const ojson& j) {
  return {j.at("id").get<std::string>(), layer_from(j.at("layer").get<std::string>()), cloud_from(j),
          j.value("he_clamped", false)};
}

ojson layer_weights_json(const LayerWeights& lw) {
  check_simplex(lw.subjective, "subjective weights of '" + lw.parent_id + "'");
  check_simplex(lw.objective, "objective weights of '" + lw.parent_id + "'");
  check_simplex(lw.combined, "combined weights of '" + lw.parent_id + "'");
  ojson j = {{"parent", lw.parent_id},
             {"ids", lw.combined.ids},
             {"subjective", vec_json(lw.subjective.weights)},
             {"objective", vec_json(lw.objective.weights)},
             {"combined", vec_json(lw.combined.weights)},
             {"theta", {lw.theta[0], lw.theta[1]}},
             {"objective_value", lw.objective_value},
             {"fallback", lw.fallback}};
  if (lw.repair) {
    const auto& rs = *lw.repair;
    ojson matrix = ojson::array();
    for (Eigen::Index i = 0; i < rs.matrix.rows(); ++i) matrix.push_back(vec_json(rs.matrix.row(i).transpose()));
    j["repair"] = {{"source", rs.source},        {"repairs", rs.repairs},     {"initial_cr", rs.initial_cr},
                   {"final_cr", rs.final_cr},    {"distances", rs.distances}, {"matrix", matrix}};
  }
  return j;
}

LayerWeights layer_weights_from(const ojson& j) {
  LayerWeights lw;
  lw.parent_id = j.at("parent").get<std::string>();
  const auto ids = j.at("ids").get<std::vector<std::string>>();
  lw.subjective = {ids, vec_from(j.at("subjective")), WeightKind::kSubjective};
  lw.objective = {ids, vec_from(j.at("objective")), WeightKind::kObjective};
  lw.combined = {ids, vec_from(j.at("combined")), WeightKind::kCombined};
  lw.theta = {j.at("theta")[0].get<double>(), j.at("theta")[1].get<double>()};
  lw.objective_value = j.at("objective_value").get<double>();
  lw.fallback = j.at("fallback").get<bool>();
  if (j.contains("repair")) {
    const auto& r = j["repair"];
    RepairSummary rs;
    rs.source = r.at("source").get<std::string>();
    rs.repairs = r.at("repairs").get<int>();
    rs.initial_cr = r.at("initial_cr").get<double>();
    rs.final_cr = r.at("final_cr").get<double>();
    rs.distances = r.at("distances").get<std::vector<double>>();
    const auto& m = r.at("matrix");
    rs.matrix.resize(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) rs.matrix.row(static_cast<Eigen::Index>(i)) = vec_from(m[i]).transpose();
    lw.repair = std::move(rs);
  }
  return lw;
}

ojson scheme_json(const GradeScheme& s) {
  ojson bands = ojson::array();
  for (const auto& b : s.bands) bands.push_back({{"label", b.label}, {"lower", b.lower}, {"upper", b.upper}});
  return {{"he_ratio", s.he_ratio}, {"bands", bands}};
}

}  // namespace

std::string report_to_json(const EvaluationReport& r) {
  ojson doc;
  doc["tool"] = "cloudmcdm";
  doc["version"] = r.tool_version;
  doc["scenario"] = r.scenario;
  doc["seed"] = r.seed;
  doc["settings"] = {{"sigma", r.sigma},
                     {"tau", r.tau},
                     {"max_iter", r.max_iter},
                     {"aggregation", std::string(to_string(r.aggregation))},
                     {"similarity_droplets", r.similarity_droplets}};
  ojson crits = ojson::array();
  for (const auto& [id, leaves] : r.hierarchy.criteria) crits.push_back({{"id", id}, {"indicators", leaves}});
  doc["hierarchy"] = {{"root", r.hierarchy.root_id}, {"criteria", crits}};
  doc["scheme"] = scheme_json(r.scheme);
  doc["objects"] = r.objects;

  ojson groups = ojson::array();
  for (const auto& lw : r.indicator_weights) groups.push_back(layer_weights_json(lw));
  check_simplex(r.global_subjective, "global subjective weights");
  check_simplex(r.global_objective, "global objective weights");
  check_simplex(r.global_combined, "global combined weights");
  doc["weights"] = {{"criteria", layer_weights_json(r.criterion_weights)},
                    {"indicators", groups},
                    {"global",
                     {{"ids", r.global_combined.ids},
                      {"subjective", vec_json(r.global_subjective.weights)},
                      {"objective", vec_json(r.global_objective.weights)},
                      {"combined", vec_json(r.global_combined.weights)}}}};

  ojson crit_clouds = ojson::array();
  for (const auto& c : r.criterion_clouds) crit_clouds.push_back(level_json(c));
  ojson ind_clouds = ojson::array();
  for (const auto& c : r.indicator_clouds) ind_clouds.push_back(level_json(c));
  doc["clouds"] = {{"comprehensive", level_json(r.comprehensive)}, {"criteria", crit_clouds}, {"indicators", ind_clouds}};

  ojson grades = ojson::array();
  for (const auto& g : r.grades) {
    ojson sims = ojson::array();
    for (std::size_t k = 0; k < g.grade.similarities.size(); ++k) {
      sims.push_back({{"label", r.scheme.bands[k].label}, {"similarity", g.grade.similarities[k]}});
    }
    grades.push_back({{"id", g.id}, {"grade", g.grade.label}, {"similarities", sims}});
  }
  doc["grades"] = grades;
  doc["fce"] = {{"score", r.fce.score}, {"grade_memberships", r.fce.grade_memberships}, {"gap_to_cloud_ex", r.fce.gap}};
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text, const std::string& source) {
  EvaluationReport r;
  try {
    const auto doc = ojson::parse(text);
    r.tool_version = doc.at("version").get<std::string>();
    r.scenario = doc.at("scenario").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    const auto& s = doc.at("settings");
    r.sigma = s.at("sigma").get<double>();
    r.tau = s.at("tau").get<double>();
    r.max_iter = s.at("max_iter").get<int>();
    r.aggregation = parse_aggregation_strategy(s.at("aggregation").get<std::string>());
    r.similarity_droplets = s.at("similarity_droplets").get<std::size_t>();
    r.hierarchy.root_id = doc.at("hierarchy").at("root").get<std::string>();
    for (const auto& c : doc.at("hierarchy").at("criteria")) {
      r.hierarchy.criteria.emplace_back(c.at("id").get<std::string>(), c.at("indicators").get<std::vector<std::string>>());
    }
    const auto& sch = doc.at("scheme");
    r.scheme.he_ratio = sch.at("he_ratio").get<double>();
    for (const auto& b : sch.at("bands")) {
      r.scheme.bands.push_back({b.at("label").get<std::string>(), b.at("lower").get<double>(), b.at("upper").get<double>()});
    }
    r.objects = doc.at("objects").get<std::size_t>();

    const auto& w = doc.at("weights");
    r.criterion_weights = layer_weights_from(w.at("criteria"));
    for (const auto& g : w.at("indicators")) r.indicator_weights.push_back(layer_weights_from(g));
    const auto& gl = w.at("global");
    const auto ids = gl.at("ids").get<std::vector<std::string>>();
    r.global_subjective = {ids, vec_from(gl.at("subjective")), WeightKind::kSubjective};
    r.global_objective = {ids, vec_from(gl.at("objective")), WeightKind::kObjective};
    r.global_combined = {ids, vec_from(gl.at("combined")), WeightKind::kCombined};

    const auto& cl = doc.at("clouds");
    r.comprehensive = level_from(cl.at("comprehensive"));
    for (const auto& c : cl.at("criteria")) r.criterion_clouds.push_back(level_from(c));
    for (const auto& c : cl.at("indicators")) r.indicator_clouds.push_back(level_from(c));

    for (const auto& g : doc.at("grades")) {
      LevelGrade lg;
      lg.id = g.at("id").get<std::string>();
      lg.grade.label = g.at("grade").get<std::string>();
      for (const auto& sim : g.at("similarities")) lg.grade.similarities.push_back(sim.at("similarity").get<double>());
      for (std::size_t k = 0; k < r.scheme.bands.size(); ++k) {
        if (r.scheme.bands[k].label == lg.grade.label) lg.grade.band_index = k;
      }
      r.grades.push_back(std::move(lg));
    }
    const auto& f = doc.at("fce");
    r.fce.score = f.at("score").get<double>();
    r.fce.grade_memberships = f.at("grade_memberships").get<std::vector<double>>();
    r.fce.gap = f.at("gap_to_cloud_ex").get<double>();
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  return r;
}

EvaluationReport load_report(const std::string& path) { return report_from_json(detail::read_text_file(path), path); }

ScenarioComparison compare_scenarios(const EvaluationReport& a, const EvaluationReport& b) {
  if (!(a.hierarchy == b.hierarchy)) {
    throw InputError("reports '" + a.scenario + "' and '" + b.scenario + "' use different hierarchies");
  }
  if (!(a.scheme == b.scheme)) {
    throw InputError("reports '" + a.scenario + "' and '" + b.scenario + "' use different grade schemes");
  }
  ScenarioComparison out;
  out.before = a.scenario;
  out.after = b.scenario;
  auto delta = [](const LevelCloud& x, const LevelCloud& y) {
    return LevelDelta{x.id, x.layer, x.cloud, y.cloud, y.cloud.ex - x.cloud.ex, y.cloud.en - x.cloud.en, y.cloud.he - x.cloud.he};
  };
  out.levels.push_back(delta(a.comprehensive, b.comprehensive));
  for (std::size_t c = 0; c < a.criterion_clouds.size(); ++c) out.levels.push_back(delta(a.criterion_clouds[c], b.criterion_clouds[c]));
  const auto& top = out.levels.front();
  out.ex_increased = top.d_ex > 0.0;
  out.en_decreased = top.d_en < 0.0;
  out.he_decreased = top.d_he < 0.0;
  return out;
}

std::string comparison_to_json(const ScenarioComparison& c) {
  ojson levels = ojson::array();
  for (const auto& l : c.levels) {
    levels.push_back({{"id", l.id},
                      {"layer", std::string(to_string(l.layer))},
                      {"before", cloud_json(l.before)},
                      {"after", cloud_json(l.after)},
                      {"delta", {{"ex", l.d_ex}, {"en", l.d_en}, {"he", l.d_he}}}});
  }
  ojson doc = {{"before", c.before},
               {"after", c.after},
               {"flags", {{"ex_increased", c.ex_increased}, {"en_decreased", c.en_decreased}, {"he_decreased", c.he_decreased}}},
               {"levels", levels}};
  return doc.dump(2) + "\n";
}

}  // namespace cloudmcdm
