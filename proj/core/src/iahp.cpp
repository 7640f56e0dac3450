#include "cloudmcdm/iahp.hpp"

#include <algorithm>
#include <cmath>

#include "cloudmcdm/power_iteration.hpp"
#include "csv.hpp"
#include "io_util.hpp"

namespace cloudmcdm {

namespace {

constexpr double kScaleTolerance = 1e-9;
constexpr double kKnotSnap = 1e-12;
// Slope of the outermost table segments (one scale step per 0.05).
constexpr double kEndSlope = 20.0;

std::string cell_name(Eigen::Index i, Eigen::Index j) {
  return "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_square(const Eigen::MatrixXd& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw InputError(std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  if (m.rows() < kMinJudgmentOrder || m.rows() > kMaxJudgmentOrder) {
    throw InputError(std::string(what) + " order " + std::to_string(m.rows()) + " is outside [" +
                     std::to_string(kMinJudgmentOrder) + ", " + std::to_string(kMaxJudgmentOrder) + "]");
  }
}

// Logistic of the log-odds difference, i.e. a / (a + b) for a = exp(log_a), b = exp(log_b).
double odds_ratio_to_probability(double log_a, double log_b) { return 1.0 / (1.0 + std::exp(log_b - log_a)); }

}  // namespace

std::optional<std::size_t> scale_index(double value) {
  for (std::size_t k = 0; k < kSaatyScale.size(); ++k) {
    if (std::abs(value - kSaatyScale[k]) <= kScaleTolerance) return k;
  }
  return std::nullopt;
}

JudgmentMatrix::JudgmentMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_square(values_, "judgment matrix");
  const Eigen::Index n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v <= 0.0) throw InputError("judgment matrix " + cell_name(i, j) + " must be positive and finite");
    }
    if (std::abs(values_(i, i) - 1.0) > kReciprocityTolerance) {
      throw InputError("judgment matrix " + cell_name(i, i) + " must be 1");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(values_(i, j) * values_(j, i) - 1.0) > kReciprocityTolerance) {
        throw InputError("judgment matrix " + cell_name(i, j) + " and " + cell_name(j, i) + " are not reciprocal");
      }
    }
  }
}

PreferenceRelation::PreferenceRelation(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_square(values_, "preference relation");
  const Eigen::Index n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values_(i, j);
      if (!(v > 0.0 && v < 1.0)) throw InputError("preference relation " + cell_name(i, j) + " must lie in (0, 1)");
    }
    if (std::abs(values_(i, i) - 0.5) > kReciprocityTolerance) {
      throw InputError("preference relation " + cell_name(i, i) + " must be 0.5");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(values_(i, j) + values_(j, i) - 1.0) > kReciprocityTolerance) {
        throw InputError("preference relation " + cell_name(i, j) + " and " + cell_name(j, i) + " are not complementary");
      }
    }
  }
}

void RepairConfig::validate() const {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("sigma must lie in (0, 1)");
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  if (max_iter < 0) throw InputError("max_iter must be nonnegative");
  if (!(cr_threshold > 0.0)) throw InputError("CR threshold must be positive");
}

double random_index(Eigen::Index n) {
  static constexpr std::array<double, 16> kRandomIndex = {
      0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.54, 1.56, 1.58, 1.59};
  if (n < 0 || n >= static_cast<Eigen::Index>(kRandomIndex.size())) {
    throw InputError("no random index for order " + std::to_string(n));
  }
  return kRandomIndex[static_cast<std::size_t>(n)];
}

PreferenceRelation to_preference(const JudgmentMatrix& j) {
  const Eigen::Index n = j.order();
  Eigen::MatrixXd p(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto k = scale_index(j(r, c));
      if (!k) {
        throw InputError("judgment " + cell_name(r, c) + " value " + std::to_string(j(r, c)) +
                         " is not on the 1/9..9 scale");
      }
      p(r, c) = kPreferenceScale[*k];
    }
  }
  return PreferenceRelation(std::move(p));
}

double preference_to_judgment(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("preference value " + std::to_string(p) + " outside (0, 1)");
  const double lo = kPreferenceScale.front();
  const double hi = kPreferenceScale.back();
  if (p > hi + kKnotSnap) return kSaatyScale.back() + kEndSlope * (p - hi);
  if (p < lo - kKnotSnap) return 1.0 / (kSaatyScale.back() + kEndSlope * (lo - p));

  for (std::size_t k = 0; k < kPreferenceScale.size(); ++k) {
    if (std::abs(p - kPreferenceScale[k]) <= kKnotSnap) return kSaatyScale[k];
  }
  const auto upper = std::upper_bound(kPreferenceScale.begin(), kPreferenceScale.end(), p);
  const auto k = static_cast<std::size_t>(upper - kPreferenceScale.begin());  // p in (knot[k-1], knot[k])
  const double t = (p - kPreferenceScale[k - 1]) / (kPreferenceScale[k] - kPreferenceScale[k - 1]);
  return kSaatyScale[k - 1] + t * (kSaatyScale[k] - kSaatyScale[k - 1]);
}

JudgmentMatrix from_preference(const PreferenceRelation& p) {
  const Eigen::Index n = p.order();
  Eigen::MatrixXd j = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r + 1; c < n; ++c) {
      j(r, c) = preference_to_judgment(p(r, c));
      j(c, r) = 1.0 / j(r, c);
    }
  }
  return JudgmentMatrix(std::move(j));
}

PreferenceRelation consistent_reference(const PreferenceRelation& p) {
  const Eigen::Index n = p.order();
  Eigen::MatrixXd ref = p.values();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 2; j < n; ++j) {
      double log_agree = 0.0;
      double log_oppose = 0.0;
      for (Eigen::Index t = i + 1; t < j; ++t) {
        log_agree += std::log(p(i, t)) + std::log(p(t, j));
        log_oppose += std::log1p(-p(i, t)) + std::log1p(-p(t, j));
      }
      const auto chains = static_cast<double>(j - i - 1);
      ref(i, j) = odds_ratio_to_probability(log_agree / chains, log_oppose / chains);
      ref(j, i) = 1.0 - ref(i, j);
    }
  }
  return PreferenceRelation(std::move(ref));
}

double preference_distance(const PreferenceRelation& p, const PreferenceRelation& q, DistanceNorm norm) {
  if (p.order() != q.order()) {
    throw InputError("preference_distance: order " + std::to_string(p.order()) + " vs " + std::to_string(q.order()));
  }
  const double frob = (p.values() - q.values()).norm();
  if (norm == DistanceNorm::kFrobenius) return frob;
  const auto n = static_cast<double>(p.order());
  return frob / std::sqrt(n * (n - 1.0));
}

PreferenceRelation repair_step(const PreferenceRelation& p, const PreferenceRelation& reference, double sigma) {
  if (p.order() != reference.order()) throw InputError("repair_step: order mismatch");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw InputError("repair_step: sigma must lie in [0, 1]");
  const Eigen::Index n = p.order();
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(n, n, 0.5);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = p(i, j);
      const double b = reference(i, j);
      const double agree = std::pow(a, 1.0 - sigma) * std::pow(b, sigma);
      const double oppose = std::pow(1.0 - a, 1.0 - sigma) * std::pow(1.0 - b, sigma);
      out(i, j) = agree / (agree + oppose);
      out(j, i) = 1.0 - out(i, j);
    }
  }
  return PreferenceRelation(std::move(out));
}

RepairResult auto_correct(const JudgmentMatrix& j, const RepairConfig& cfg) {
  cfg.validate();
  RepairTrace trace;
  trace.initial_cr = consistency_ratio(j).cr;

  PreferenceRelation current = to_preference(j);
  for (int pass = 0;; ++pass) {
    if (cfg.keep_relations) trace.relations.push_back(current.values());
    const PreferenceRelation reference = consistent_reference(current);
    const double d = preference_distance(current, reference, cfg.norm);
    trace.distances.push_back(d);

    if (d < cfg.tau) {
      JudgmentMatrix candidate = pass == 0 ? j : from_preference(current);
      const double cr = consistency_ratio(candidate).cr;
      if (cr < cfg.cr_threshold) {
        trace.final_cr = cr;
        return {std::move(candidate), std::move(trace)};
      }
    }
    if (pass == cfg.max_iter) break;
    current = repair_step(current, reference, cfg.sigma);
    ++trace.repairs;
  }
  trace.final_cr = consistency_ratio(from_preference(current)).cr;
  const double last = trace.distances.back();
  throw RepairError("judgment matrix not repaired within " + std::to_string(cfg.max_iter) +
                        " iterations (last distance " + std::to_string(last) + ", CR " +
                        std::to_string(trace.final_cr) + ")",
                    std::move(trace));
}

ConsistencyResult consistency_ratio(const JudgmentMatrix& j) {
  const auto n = j.order();
  const double lambda = power_iteration(j.values()).eigenvalue;
  ConsistencyResult out;
  out.lambda_max = lambda;
  out.ci = n > 1 ? (lambda - static_cast<double>(n)) / static_cast<double>(n - 1) : 0.0;
  const double ri = random_index(n);
  out.cr = ri > 0.0 ? out.ci / ri : 0.0;
  return out;
}

WeightVector principal_weights(const JudgmentMatrix& j, std::vector<std::string> ids, bool enforce_consistency) {
  const auto n = j.order();
  if (ids.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
  }
  if (static_cast<Eigen::Index>(ids.size()) != n) {
    throw InputError("principal_weights: " + std::to_string(ids.size()) + " ids for order " + std::to_string(n));
  }
  if (enforce_consistency) {
    const double cr = consistency_ratio(j).cr;
    if (cr >= 0.1) throw InputError("judgment matrix CR " + std::to_string(cr) + " is not below 0.1");
  }
  auto pair = power_iteration(j.values());
  return {std::move(ids), std::move(pair.vector), WeightKind::kSubjective};
}

JudgmentMatrix parse_judgment_csv(std::string_view text, const std::string& source, std::vector<std::string>* labels) {
  auto rows = detail::parse_csv(text);
  if (rows.empty()) throw InputError(source + ": empty judgment matrix");

  const bool labelled = !rows.front().cells.empty() && rows.front().cells.front().empty();
  std::vector<std::string> header;
  if (labelled) {
    header.assign(rows.front().cells.begin() + 1, rows.front().cells.end());
    rows.erase(rows.begin());
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw InputError(source + ": empty judgment matrix");
  if (labelled && static_cast<Eigen::Index>(header.size()) != n) {
    throw InputError(source + ": header has " + std::to_string(header.size()) + " labels but there are " +
                     std::to_string(n) + " rows");
  }
  const std::size_t skip = labelled ? 1 : 0;

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.cells.size()) != n + static_cast<Eigen::Index>(skip)) {
      throw InputError(source + ":" + std::to_string(row.line) + ": expected " + std::to_string(n) + " entries, found " +
                       std::to_string(row.cells.size() - skip));
    }
    if (labelled && row.cells.front() != header[static_cast<std::size_t>(r)]) {
      throw InputError(source + ":" + std::to_string(row.line) + ": row label '" + row.cells.front() +
                       "' does not match column label '" + header[static_cast<std::size_t>(r)] + "'");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const std::string& token = row.cells[static_cast<std::size_t>(c) + skip];
      std::optional<double> value;
      if (const auto slash = token.find('/'); slash != std::string::npos) {
        const auto num = detail::parse_double(std::string_view(token).substr(0, slash));
        const auto den = detail::parse_double(std::string_view(token).substr(slash + 1));
        if (num && den && *den != 0.0) value = *num / *den;
      } else {
        value = detail::parse_double(token);
      }
      if (!value) throw InputError(source + ": " + cell_name(r, c) + ": cannot parse '" + token + "'");
      m(r, c) = *value;
    }
  }
  if (labels) *labels = std::move(header);
  try {
    return JudgmentMatrix(std::move(m));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

JudgmentMatrix load_judgment_csv(const std::string& path, std::vector<std::string>* labels) {
  return parse_judgment_csv(detail::read_text_file(path), path, labels);
}

}  // namespace cloudmcdm
