#include <random>

#include <benchmark/benchmark.h>

#include "cloudmcdm/cloud.hpp"
#include "cloudmcdm/combiner.hpp"
#include "cloudmcdm/ewm.hpp"
#include "cloudmcdm/iahp.hpp"
#include "cloudmcdm/power_iteration.hpp"

using namespace cloudmcdm;

namespace {

Eigen::MatrixXd scale_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_int_distribution<std::size_t> pick(0, 16);
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto k = pick(rng);
      a(i, j) = kSaatyScale[k];
      a(j, i) = kSaatyScale[16 - k];
    }
  return a;
}

NormalizedMatrix random_normalized(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0, 1);
  NormalizedMatrix z;
  z.values.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    z.object_ids.push_back("o" + std::to_string(i));
    for (Eigen::Index j = 0; j < n; ++j) z.values(i, j) = u(rng);
  }
  for (Eigen::Index j = 0; j < n; ++j) z.indicator_ids.push_back("c" + std::to_string(j));
  return z;
}

void BM_PowerIteration(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = scale_matrix(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_iteration(a));
}
BENCHMARK(BM_PowerIteration)->Arg(3)->Arg(7)->Arg(15);

void BM_RepairStep(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto p = to_preference(JudgmentMatrix(scale_matrix(rng, state.range(0))));
  for (auto _ : state) {
    const auto ref = consistent_reference(p);
    benchmark::DoNotOptimize(repair_step(p, ref, 0.8));
  }
}
BENCHMARK(BM_RepairStep)->Arg(7)->Arg(15);

void BM_AutoCorrect(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd a;
  do a = scale_matrix(rng, 7);
  while (consistency_ratio(JudgmentMatrix(a)).cr <= 0.1);
  const JudgmentMatrix j(a);
  RepairConfig cfg;
  cfg.max_iter = 50;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(auto_correct(j, cfg));
    } catch (const RepairError&) {
    }
  }
}
BENCHMARK(BM_AutoCorrect);

void BM_EntropyWeights(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto z = random_normalized(rng, state.range(0), 34);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_weights(z));
}
BENCHMARK(BM_EntropyWeights)->Arg(30)->Arg(1000);

void BM_CombineWeights(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto z = random_normalized(rng, state.range(0), 34);
  WeightVector ws{z.indicator_ids, Eigen::VectorXd::Constant(34, 1.0 / 34), WeightKind::kSubjective};
  const auto wo = entropy_weights(z).weights;
  for (auto _ : state) benchmark::DoNotOptimize(combine_weights(ws, wo, z));
}
BENCHMARK(BM_CombineWeights)->Arg(30)->Arg(1000);

void BM_ForwardCloud(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ForwardOptions opt{.threads = static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(forward_cloud({83, 7, 3}, n, 42, opt));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_ForwardCloud)->Args({100000, 1})->Args({100000, 4});

void BM_Similarity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cloud_similarity({83, 7, 3}, {80, 1.67, 0.17}, n, 7));
}
BENCHMARK(BM_Similarity)->Arg(20000)->Arg(100000);

void BM_AssignGrade(benchmark::State& state) {
  const auto scheme = default_grade_scheme();
  for (auto _ : state) benchmark::DoNotOptimize(assign_grade({83, 7, 3}, scheme, 20000, 9));
}
BENCHMARK(BM_AssignGrade);

}  // namespace

BENCHMARK_MAIN();
