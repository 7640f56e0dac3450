#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cloudmcdm/error.hpp"
#include "cloudmcdm/ewm.hpp"

using namespace cloudmcdm;

namespace {

NormalizedMatrix wrap(const Eigen::MatrixXd& v) {
  NormalizedMatrix z;
  z.values = v;
  for (Eigen::Index i = 0; i < v.rows(); ++i) z.object_ids.push_back("o" + std::to_string(i));
  for (Eigen::Index j = 0; j < v.cols(); ++j) z.indicator_ids.push_back("c" + std::to_string(j));
  return z;
}

// Straight transcription of the entropy weight formulas.
Eigen::VectorXd direct_weights(const Eigen::MatrixXd& z) {
  const auto m = static_cast<double>(z.rows());
  Eigen::VectorXd d(z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    double col = 0;
    for (Eigen::Index i = 0; i < z.rows(); ++i) col += z(i, j);
    double h = 0;
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      const double p = z(i, j) / col;
      if (p > 0) h -= p * std::log(p);
    }
    d(j) = 1.0 - h / std::log(m);
  }
  return d / d.sum();
}

Eigen::MatrixXd random_unit(std::mt19937_64& rng, int m, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  Eigen::MatrixXd z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = u(rng);
  return z;
}

}  // namespace

TEST(Entropy, HandComputedTwoByTwo) {
  Eigen::MatrixXd z(2, 2);
  z << 1, 0.5, 0, 0.5;
  const auto r = entropy_weights(wrap(z));
  EXPECT_DOUBLE_EQ(r.weights.weights(0), 1.0);
  EXPECT_EQ(r.weights.weights(1), 0.0);
  EXPECT_DOUBLE_EQ(r.entropies(0), 0.0);
  EXPECT_DOUBLE_EQ(r.entropies(1), 1.0);
  EXPECT_EQ(r.weights.kind, WeightKind::kObjective);
}

TEST(Entropy, ConstantColumnGetsZeroWeight) {
  std::mt19937_64 rng(1);
  Eigen::MatrixXd z = random_unit(rng, 7, 4);
  z.col(2).setConstant(0.5);
  const auto r = entropy_weights(wrap(z));
  EXPECT_EQ(r.weights.weights(2), 0.0);
  EXPECT_EQ(r.entropies(2), 1.0);
  EXPECT_NEAR(r.weights.weights.sum(), 1.0, 1e-12);
}

TEST(Entropy, IdenticalColumnsShareWeight) {
  std::mt19937_64 rng(2);
  Eigen::MatrixXd z = random_unit(rng, 6, 3);
  z.col(1) = z.col(0);
  const auto w = entropy_weights(wrap(z)).weights.weights;
  EXPECT_EQ(w(0), w(1));
}

TEST(Entropy, MatchesDirectFormula) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd z = random_unit(rng, 2 + trial % 9, 1 + trial % 7);
    const auto r = entropy_weights(wrap(z));
    EXPECT_LT((r.weights.weights - direct_weights(z)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(((r.entropies.array() >= 0) && (r.entropies.array() <= 1)).all());
    EXPECT_LT((r.diversity - (1.0 - r.entropies.array()).matrix()).norm(), 1e-15);
  }
}

TEST(Entropy, ZerosUseZeroLogZero) {
  Eigen::MatrixXd z(3, 2);
  z << 0, 0.2, 0, 0.9, 1, 0.4;
  const auto r = entropy_weights(wrap(z));
  EXPECT_DOUBLE_EQ(r.entropies(0), 0.0);
  EXPECT_LT((r.weights.weights - direct_weights(z)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Entropy, ColumnScaleInvariance) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd z = random_unit(rng, 8, 5);
  Eigen::MatrixXd s = z;
  s.col(3) *= 0.37;
  EXPECT_LT((entropy_weights(wrap(z)).weights.weights - entropy_weights(wrap(s)).weights.weights).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Entropy, PermutationEquivariance) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd z = random_unit(rng, 6, 5);
  std::vector<int> rows(6), cols(5);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  Eigen::MatrixXd p(6, 5);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) p(i, j) = z(rows[i], cols[j]);
  const auto wz = entropy_weights(wrap(z)).weights.weights;
  const auto wp = entropy_weights(wrap(p)).weights.weights;
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(wp(j), wz(cols[j]), 1e-12);
}

TEST(Entropy, EntropyIsOneOnlyForConstantColumns) {
  std::mt19937_64 rng(6);
  const auto r = entropy_weights(wrap(random_unit(rng, 5, 6)));
  for (Eigen::Index j = 0; j < 6; ++j) EXPECT_LT(r.entropies(j), 1.0);
}

TEST(Entropy, AllConstantGivesUniform) {
  const auto w = entropy_weights(wrap(Eigen::MatrixXd::Constant(4, 3, 0.5))).weights.weights;
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(w(j), 1.0 / 3);
}

TEST(Entropy, Errors) {
  EXPECT_THROW(entropy_weights(wrap(Eigen::MatrixXd::Constant(1, 3, 0.5))), InputError);
  EXPECT_THROW(entropy_weights(wrap(Eigen::MatrixXd::Constant(3, 2, 1.5))), InputError);
  EXPECT_THROW(entropy_weights(wrap(Eigen::MatrixXd::Zero(3, 2))), InputError);
}
