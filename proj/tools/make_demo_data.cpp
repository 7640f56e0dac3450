// Generates the bundled demo score tables (pre.csv, post.csv) by sampling a
// target cloud per criterion, jittered per indicator.
//
//   make_demo_data <hierarchy.json> <out_dir> [records] [seed]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cloudmcdm/cloud.hpp"
#include "cloudmcdm/hierarchy.hpp"
#include "cloudmcdm/random.hpp"

namespace {

using namespace cloudmcdm;

using Targets = std::map<std::string, CloudParams>;

const Targets kPre = {
    {"C1", {82.1, 4.8, 3.4}}, {"C2", {85.5, 6.5, 2.8}}, {"C3", {86.0, 7.5, 3.5}}, {"C4", {85.0, 8.0, 3.0}},
    {"C5", {85.0, 5.9, 2.9}}, {"C6", {76.5, 7.5, 3.0}}, {"C7", {76.3, 7.0, 3.0}},
};

const Targets kPost = {
    {"C1", {87.9, 5.3, 2.4}}, {"C2", {88.0, 5.0, 2.2}}, {"C3", {88.5, 5.5, 1.9}}, {"C4", {87.5, 5.6, 2.3}},
    {"C5", {87.0, 4.7, 2.2}}, {"C6", {87.3, 5.5, 2.4}}, {"C7", {88.1, 5.5, 2.5}},
};

void write_scenario(const IndexHierarchy& h, const Targets& targets, std::size_t records, std::uint64_t seed,
                    const std::filesystem::path& path) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> columns;
  std::uint64_t stream = 0;
  for (const auto& crit : h.criteria()) {
    const auto& t = targets.at(crit);
    for (const auto& leaf : leaf_indicators(h, crit)) {
      // Per-indicator offsets keep siblings distinguishable for the entropy weights.
      NormalSource jitter(derive_seed(seed, 1000 + stream));
      const CloudParams c{t.ex + 1.5 * jitter.standard_normal(), t.en * std::exp(0.12 * jitter.standard_normal()), t.he};
      const auto drops = forward_cloud(c, records, derive_seed(seed, stream++));
      const bool cost = h.node(leaf).direction == Direction::kCost;
      std::vector<double> col;
      for (const auto& d : drops.droplets) {
        const double rating = std::clamp(d.x, 0.0, 100.0);
        col.push_back(std::round(10.0 * (cost ? 100.0 - rating : rating)) / 10.0);
      }
      ids.push_back(leaf);
      columns.push_back(std::move(col));
    }
  }

  std::ofstream out(path);
  out << "object";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < records; ++r) {
    std::snprintf(buf, sizeof buf, "R%03zu", r + 1);
    out << buf;
    for (const auto& col : columns) {
      std::snprintf(buf, sizeof buf, ",%.1f", col[r]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: make_demo_data <hierarchy.json> <out_dir> [records] [seed]\n";
    return 2;
  }
  try {
    const auto h = load_hierarchy(argv[1]);
    const std::filesystem::path dir(argv[2]);
    const std::size_t records = argc > 3 ? std::stoul(argv[3]) : 100;
    const std::uint64_t seed = argc > 4 ? std::stoull(argv[4]) : 7;
    std::filesystem::create_directories(dir);
    write_scenario(h, kPre, records, derive_seed(seed, 1), dir / "pre.csv");
    write_scenario(h, kPost, records, derive_seed(seed, 2), dir / "post.csv");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
