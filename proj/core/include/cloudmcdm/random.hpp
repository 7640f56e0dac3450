#pragma once

#include <cstdint>
#include <random>

namespace cloudmcdm {

/// SplitMix64 mix of (seed, stream). Used to give every droplet block its
/// own generator so that block-parallel and sequential runs agree.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded normal-variate source.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Uniforms take the top 53 bits, shifted into (0, 1).
/// Normals use the Box-Muller transform and consume uniforms in pairs,
/// returning the cosine branch first and caching the sine branch. Together
/// these make the stream identical across standard libraries, unlike
/// std::normal_distribution.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double standard_normal();
  double normal(double mean, double stddev) { return mean + stddev * standard_normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cloudmcdm
