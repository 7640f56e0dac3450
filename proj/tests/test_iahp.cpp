#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cloudmcdm/error.hpp"
#include "cloudmcdm/iahp.hpp"
#include "cloudmcdm/power_iteration.hpp"
#include "support.hpp"

using namespace cloudmcdm;
using testsupport::cr_oracle;
using testsupport::lambda_max_oracle;

namespace {

Eigen::MatrixXd m3(std::initializer_list<double> v) {
  Eigen::MatrixXd a(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = *it++;
  return a;
}

const Eigen::MatrixXd kCyclic = m3({1, 3, 1.0 / 5, 1.0 / 3, 1, 7, 5, 1.0 / 7, 1});

// Direct product form of the chain reference, without logs.
Eigen::MatrixXd reference_oracle(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::MatrixXd r = p;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 2; j < n; ++j) {
      double agree = 1.0, oppose = 1.0;
      for (Eigen::Index t = i + 1; t < j; ++t) {
        agree *= p(i, t) * p(t, j);
        oppose *= (1 - p(i, t)) * (1 - p(t, j));
      }
      const double k = 1.0 / static_cast<double>(j - i - 1);
      r(i, j) = std::pow(agree, k) / (std::pow(agree, k) + std::pow(oppose, k));
      r(j, i) = 1 - r(i, j);
    }
  return r;
}

Eigen::MatrixXd random_preference(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(n, n, 0.5);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      p(i, j) = u(rng);
      p(j, i) = 1 - p(i, j);
    }
  return p;
}

void expect_complementary(const PreferenceRelation& p) {
  for (Eigen::Index i = 0; i < p.order(); ++i) {
    EXPECT_NEAR(p(i, i), 0.5, 1e-9);
    for (Eigen::Index j = 0; j < p.order(); ++j) EXPECT_NEAR(p(i, j) + p(j, i), 1.0, 1e-9);
  }
}

}  // namespace

TEST(Scale, TableRoundTripIsExact) {
  for (std::size_t k = 0; k < 17; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(2, 2);
    a(0, 1) = kSaatyScale[k];
    a(1, 0) = kSaatyScale[16 - k];
    const auto p = to_preference(JudgmentMatrix(a));
    EXPECT_EQ(p(0, 1), kPreferenceScale[k]);
    EXPECT_EQ(p(1, 0), kPreferenceScale[16 - k]);
    const auto back = from_preference(p);
    EXPECT_EQ(back(0, 1), kSaatyScale[k]);
    EXPECT_EQ(preference_to_judgment(kPreferenceScale[k]), kSaatyScale[k]);
  }
}

TEST(Scale, NamedTableValues) {
  EXPECT_EQ(kPreferenceScale[*scale_index(1.0 / 9)], 0.1);
  EXPECT_EQ(kPreferenceScale[*scale_index(1.0)], 0.5);
  EXPECT_EQ(kPreferenceScale[*scale_index(9.0)], 0.9);
  EXPECT_FALSE(scale_index(2.5).has_value());
  EXPECT_EQ(preference_to_judgment(0.9), 9.0);
  EXPECT_EQ(preference_to_judgment(0.5), 1.0);
  EXPECT_DOUBLE_EQ(preference_to_judgment(0.575), 2.5);
}

TEST(Scale, InterpolationIsMonotoneBetweenKnots) {
  double prev = 0.0;
  for (double p = 0.1; p <= 0.9 + 1e-12; p += 0.0025) {
    const double v = preference_to_judgment(p);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Scale, ValuesBeyondEndKnotsExtendOuterSegments) {
  EXPECT_DOUBLE_EQ(preference_to_judgment(0.95), 10.0);
  EXPECT_DOUBLE_EQ(preference_to_judgment(0.05), 0.1);
  EXPECT_THROW(preference_to_judgment(1.0), InputError);
  EXPECT_THROW(preference_to_judgment(0.0), InputError);
}

TEST(Scale, OffScaleEntryNamesCell) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(3, 3);
  a(1, 2) = 2.5;
  a(2, 1) = 0.4;
  try {
    to_preference(JudgmentMatrix(a));
    FAIL();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("(2,3)"), std::string::npos) << msg;
  }
}

TEST(Judgment, ConstructionChecks) {
  EXPECT_THROW(JudgmentMatrix(Eigen::MatrixXd::Ones(1, 1)), InputError);
  EXPECT_THROW(JudgmentMatrix(Eigen::MatrixXd::Ones(16, 16)), InputError);
  EXPECT_THROW(JudgmentMatrix(Eigen::MatrixXd::Ones(2, 3)), InputError);
  EXPECT_NO_THROW(JudgmentMatrix(Eigen::MatrixXd::Ones(15, 15)));
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(2, 2);
  a(0, 1) = 3;
  EXPECT_THROW(JudgmentMatrix{a}, InputError);
  a(1, 0) = 1.0 / 3;
  a(0, 0) = 2;
  EXPECT_THROW(JudgmentMatrix{a}, InputError);
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(2, 2, 0.5);
  p(0, 1) = 0.7;
  EXPECT_THROW(PreferenceRelation{p}, InputError);
}

TEST(Reference, ConsistentThreeByThreeIsFixedPoint) {
  // (0.6, 0.3, 0.1): ratios 2, 6, 3 all lie on the scale.
  const auto p = to_preference(JudgmentMatrix(testsupport::ratio_matrix(Eigen::Vector3d(0.6, 0.3, 0.1))));
  const auto r1 = consistent_reference(p);
  const auto r2 = consistent_reference(r1);
  EXPECT_LT((r2.values() - r1.values()).cwiseAbs().maxCoeff(), 1e-9);
  expect_complementary(r1);
}

TEST(Reference, OrderTwoIsIdentity) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(2, 2, 0.5);
  p(0, 1) = 0.8;
  p(1, 0) = 0.2;
  EXPECT_EQ(consistent_reference(PreferenceRelation(p)).values(), p);
}

TEST(Reference, IgnoresTheCellItReplaces) {
  const auto p = to_preference(JudgmentMatrix(m3({1, 2, 4, 0.5, 1, 2, 0.25, 0.5, 1})));
  Eigen::MatrixXd q = p.values();
  q(0, 2) = 1 - q(0, 2);
  q(2, 0) = 1 - q(2, 0);
  const auto a = consistent_reference(p);
  const auto b = consistent_reference(PreferenceRelation(q));
  EXPECT_EQ(a(0, 2), b(0, 2));
  const double agree = p(0, 1) * p(1, 2), oppose = (1 - p(0, 1)) * (1 - p(1, 2));
  EXPECT_NEAR(a(0, 2), agree / (agree + oppose), 1e-15);
}

TEST(Reference, MatchesProductFormOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = 3 + trial % 9;
    const Eigen::MatrixXd p = random_preference(rng, n);
    const auto r = consistent_reference(PreferenceRelation(p));
    EXPECT_LT((r.values() - reference_oracle(p)).cwiseAbs().maxCoeff(), 1e-12);
    expect_complementary(r);
  }
}

TEST(Distance, Examples) {
  std::mt19937_64 rng(5);
  const PreferenceRelation p(random_preference(rng, 4));
  EXPECT_EQ(preference_distance(p, p), 0.0);
  Eigen::MatrixXd q = p.values();
  q(0, 1) += 0.1;
  q(1, 0) -= 0.1;
  EXPECT_NEAR(preference_distance(p, PreferenceRelation(q)), std::sqrt(0.02), 1e-12);
  EXPECT_NEAR(preference_distance(p, PreferenceRelation(q), DistanceNorm::kOffDiagonalRms), std::sqrt(0.02 / 12), 1e-12);
}

TEST(Distance, MatchesDoubleLoop) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a = random_preference(rng, 4), b = random_preference(rng, 4);
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += std::abs(a(i, j) - b(i, j)) * std::abs(a(i, j) - b(i, j));
    EXPECT_NEAR(preference_distance(PreferenceRelation(a), PreferenceRelation(b)), std::sqrt(s), 1e-14);
  }
  EXPECT_THROW(preference_distance(PreferenceRelation(random_preference(rng, 3)), PreferenceRelation(random_preference(rng, 4))),
               InputError);
}

TEST(RepairStep, EndpointsAndFixedPoint) {
  std::mt19937_64 rng(7);
  const PreferenceRelation p(random_preference(rng, 5));
  const auto ref = consistent_reference(p);
  EXPECT_LT((repair_step(p, ref, 0.0).values() - p.values()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((repair_step(p, ref, 1.0).values() - ref.values()).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::MatrixXd s = Eigen::MatrixXd::Constant(2, 2, 0.5);
  s(0, 1) = 0.7;
  s(1, 0) = 0.3;
  EXPECT_NEAR(repair_step(PreferenceRelation(s), PreferenceRelation(s), 0.5)(0, 1), 0.7, 1e-15);
}

TEST(RepairStep, StaysBetweenInputsAndComplementary) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const PreferenceRelation p(random_preference(rng, 6));
    const auto ref = consistent_reference(p);
    const auto out = repair_step(p, ref, 0.8);
    expect_complementary(out);
    for (Eigen::Index i = 0; i < 6; ++i)
      for (Eigen::Index j = 0; j < 6; ++j) {
        if (std::abs(p(i, j) - ref(i, j)) < 1e-15) continue;
        EXPECT_GT(out(i, j), std::min(p(i, j), ref(i, j)));
        EXPECT_LT(out(i, j), std::max(p(i, j), ref(i, j)));
      }
  }
}

TEST(AutoCorrect, ConsistentInputIsReturnedUnchanged) {
  const JudgmentMatrix ones(Eigen::MatrixXd::Ones(5, 5));
  const auto r = auto_correct(ones);
  EXPECT_EQ(r.trace.repairs, 0);
  EXPECT_EQ(r.matrix.values(), ones.values());
  ASSERT_EQ(r.trace.distances.size(), 1u);
  EXPECT_EQ(r.trace.distances[0], 0.0);
}

TEST(AutoCorrect, RepairsCyclicMatrix) {
  ASSERT_GT(cr_oracle(kCyclic), 0.1);
  const auto r = auto_correct(JudgmentMatrix(kCyclic));
  EXPECT_GE(r.trace.repairs, 1);
  EXPECT_LT(r.trace.distances.back(), 0.1);
  EXPECT_LT(cr_oracle(r.matrix.values()), 0.1);
  EXPECT_NEAR(r.trace.final_cr, cr_oracle(r.matrix.values()), 1e-9);
  EXPECT_NEAR(r.trace.initial_cr, cr_oracle(kCyclic), 1e-9);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(r.matrix(i, j) * r.matrix(j, i), 1.0, 1e-12);
}

TEST(AutoCorrect, TraceKeepsRelationsOnRequest) {
  RepairConfig cfg;
  cfg.keep_relations = true;
  const auto r = auto_correct(JudgmentMatrix(kCyclic), cfg);
  EXPECT_EQ(r.trace.relations.size(), r.trace.distances.size());
}

TEST(AutoCorrect, DistancesDecreaseOnExpertCorpus) {
  std::mt19937_64 rng(2024);
  int converged = 0;
  for (int k = 0; k < 40; ++k) {
    const Eigen::MatrixXd a = testsupport::perturbed_expert_matrix(rng, 6);
    try {
      const auto r = auto_correct(JudgmentMatrix(a));
      ++converged;
      for (std::size_t i = 1; i < r.trace.distances.size(); ++i) EXPECT_LT(r.trace.distances[i], r.trace.distances[i - 1]);
      EXPECT_LT(cr_oracle(r.matrix.values()), 0.1);
    } catch (const RepairError&) {
    }
  }
  EXPECT_GE(converged, 38);
}

TEST(AutoCorrect, ExhaustedBudgetThrowsWithTrace) {
  RepairConfig cfg;
  cfg.max_iter = 0;
  try {
    auto_correct(JudgmentMatrix(kCyclic), cfg);
    FAIL();
  } catch (const RepairError& e) {
    EXPECT_EQ(e.trace().distances.size(), 1u);
    EXPECT_GT(e.trace().distances[0], 0.1);
  }
}

TEST(AutoCorrect, ConfigValidation) {
  RepairConfig cfg;
  cfg.sigma = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.sigma = 0.8;
  cfg.tau = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.tau = 0.1;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(AutoCorrect, RmsVariantConverges) {
  RepairConfig cfg;
  cfg.norm = DistanceNorm::kOffDiagonalRms;
  const auto r = auto_correct(JudgmentMatrix(kCyclic), cfg);
  EXPECT_LT(cr_oracle(r.matrix.values()), 0.1);
}

TEST(Consistency, Examples) {
  const auto ones = consistency_ratio(JudgmentMatrix(Eigen::MatrixXd::Ones(4, 4)));
  EXPECT_NEAR(ones.lambda_max, 4.0, 1e-12);
  EXPECT_NEAR(ones.cr, 0.0, 1e-12);
  EXPECT_NEAR(consistency_ratio(JudgmentMatrix(m3({1, 2, 4, 0.5, 1, 2, 0.25, 0.5, 1}))).cr, 0.0, 1e-12);
  const auto c = consistency_ratio(JudgmentMatrix(kCyclic));
  EXPECT_NEAR(c.lambda_max, lambda_max_oracle(kCyclic), 1e-9);
  EXPECT_NEAR(c.cr, cr_oracle(kCyclic), 1e-9);
  EXPECT_GT(c.cr, 0.1);
  EXPECT_NEAR(c.ci, (c.lambda_max - 3) / 2, 1e-15);
}

TEST(Consistency, MatchesEigenSolverOnRandomMatrices) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 3 + trial % 8;
    const Eigen::MatrixXd a = testsupport::uniform_scale_matrix(rng, n);
    EXPECT_NEAR(consistency_ratio(JudgmentMatrix(a)).lambda_max, lambda_max_oracle(a), 1e-8);
  }
}

TEST(Consistency, RandomIndexTable) {
  EXPECT_EQ(random_index(2), 0.0);
  EXPECT_EQ(random_index(3), 0.58);
  EXPECT_EQ(random_index(7), 1.32);
  EXPECT_EQ(random_index(10), 1.49);
  EXPECT_GT(random_index(15), random_index(11));
  EXPECT_EQ(consistency_ratio(JudgmentMatrix(Eigen::Matrix2d{{1, 9}, {1.0 / 9, 1}})).cr, 0.0);
}

TEST(Weights, Examples) {
  const auto u = principal_weights(JudgmentMatrix(Eigen::MatrixXd::Ones(6, 6)));
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_NEAR(u.weights(i), 1.0 / 6, 1e-12);
  const auto two = principal_weights(JudgmentMatrix(Eigen::Matrix2d{{1, 3}, {1.0 / 3, 1}}));
  EXPECT_NEAR(two.weights(0), 0.75, 1e-12);
  EXPECT_NEAR(two.weights(1), 0.25, 1e-12);
  const auto w = principal_weights(JudgmentMatrix(testsupport::ratio_matrix(Eigen::Vector3d(0.6, 0.3, 0.1))), {"a", "b", "c"});
  EXPECT_NEAR(w.weights(0), 0.6, 1e-9);
  EXPECT_NEAR(w.weights(1), 0.3, 1e-9);
  EXPECT_NEAR(w.weights(2), 0.1, 1e-9);
  EXPECT_EQ(w.ids, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(w.kind, WeightKind::kSubjective);
  EXPECT_EQ(two.ids, (std::vector<std::string>{"1", "2"}));
}

TEST(Weights, EnforcedConsistency) {
  EXPECT_THROW(principal_weights(JudgmentMatrix(kCyclic), {}, true), InputError);
  EXPECT_NO_THROW(principal_weights(JudgmentMatrix(kCyclic), {}, false));
}

TEST(Weights, PermutationEquivariant) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a = testsupport::uniform_scale_matrix(rng, 6);
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd b(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) b(i, j) = a(perm[i], perm[j]);
    const auto wa = principal_weights(JudgmentMatrix(a)).weights;
    const auto wb = principal_weights(JudgmentMatrix(b)).weights;
    EXPECT_NEAR(wa.sum(), 1.0, 1e-9);
    EXPECT_GE(wa.minCoeff(), 0.0);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(wb(i), wa(perm[i]), 1e-10);
  }
}

TEST(Weights, RecoversRandomConsistentWeights) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd w = testsupport::random_simplex(rng, 2 + trial % 14);
    const auto got = principal_weights(JudgmentMatrix(testsupport::ratio_matrix(w)));
    EXPECT_LT((got.weights - w).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(PowerIteration, ReportsNonConvergence) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  EXPECT_NO_THROW(power_iteration(a));
  std::mt19937_64 rng(1);
  EXPECT_THROW(power_iteration(testsupport::uniform_scale_matrix(rng, 8), 1e-300, 2), ConvergenceError);
}

TEST(JudgmentCsv, ParsesFractionsAndLabels) {
  const auto j = parse_judgment_csv("1,1/3,5\n3,1,7\n0.2,1/7,1\n");
  EXPECT_DOUBLE_EQ(j(0, 1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(j(2, 0), 0.2);
  std::vector<std::string> labels;
  const auto k = parse_judgment_csv(",a,b\na,1,2\nb,1/2,1\n", "<t>", &labels);
  EXPECT_EQ(labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(k(0, 1), 2.0);
}

TEST(JudgmentCsv, Errors) {
  EXPECT_THROW(parse_judgment_csv(""), InputError);
  EXPECT_THROW(parse_judgment_csv("1,2\n1/2\n"), InputError);
  EXPECT_THROW(parse_judgment_csv("1,x\n1/2,1\n"), InputError);
  EXPECT_THROW(parse_judgment_csv("1,1/0\n1/2,1\n"), InputError);
  EXPECT_THROW(parse_judgment_csv("1,2\n1,1\n"), InputError);
  EXPECT_THROW(parse_judgment_csv(",a,b\nb,1,2\na,1/2,1\n"), InputError);
}
