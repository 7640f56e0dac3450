#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cloudmcdm/iahp.hpp"

namespace testsupport {

inline std::string data_dir() { return CLOUDMCDM_DATA_DIR; }

// Largest real eigenvalue from a general dense eigensolver; independent of
// the library's power iteration.
inline double lambda_max_oracle(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double best = -1e300;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::max(best, es.eigenvalues()(i).real());
  return best;
}

inline double cr_oracle(const Eigen::MatrixXd& a) {
  static const double ri[] = {0, 0, 0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  const auto n = a.rows();
  if (n <= 2) return 0.0;
  return (lambda_max_oracle(a) - n) / (n - 1) / ri[n];
}

inline Eigen::MatrixXd ratio_matrix(const Eigen::VectorXd& w) {
  const auto n = w.size();
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = w(i) / w(j);
  return a;
}

inline Eigen::VectorXd random_simplex(std::mt19937_64& rng, Eigen::Index n) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = e(rng) + 1e-3;
  return w / w.sum();
}

// Reciprocal matrix with every upper cell drawn uniformly from the 17 scale values.
inline Eigen::MatrixXd uniform_scale_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_int_distribution<std::size_t> pick(0, 16);
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const std::size_t k = pick(rng);
      a(i, j) = cloudmcdm::kSaatyScale[k];
      a(j, i) = cloudmcdm::kSaatyScale[16 - k];
    }
  return a;
}

// An expert-style matrix: scale values nearest to true weight ratios, with a
// couple of judgments pushed several steps off. Redrawn until CR > 0.1.
inline Eigen::MatrixXd perturbed_expert_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::gamma_distribution<double> g(4.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> cell(0, n - 1);
  std::uniform_int_distribution<int> steps(2, 4);
  std::bernoulli_distribution sign(0.5);
  for (;;) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = g(rng);
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 8));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double r = std::log(w(i) / w(j));
        int best = 0;
        for (int k = 1; k < 17; ++k)
          if (std::abs(std::log(cloudmcdm::kSaatyScale[k]) - r) < std::abs(std::log(cloudmcdm::kSaatyScale[best]) - r)) best = k;
        idx[i][j] = best;
      }
    for (int p = 0; p < 2; ++p) {
      Eigen::Index i = cell(rng), j = cell(rng);
      while (i == j) j = cell(rng);
      if (i > j) std::swap(i, j);
      const int s = steps(rng) * (sign(rng) ? 1 : -1);
      idx[i][j] = std::clamp(idx[i][j] + s, 0, 16);
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        a(i, j) = cloudmcdm::kSaatyScale[static_cast<std::size_t>(idx[i][j])];
        a(j, i) = cloudmcdm::kSaatyScale[static_cast<std::size_t>(16 - idx[i][j])];
      }
    if (cr_oracle(a) > 0.1) return a;
  }
}

}  // namespace testsupport
