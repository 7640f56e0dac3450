#include <sstream>

#include <gtest/gtest.h>

#include "cloudmcdm/export.hpp"

using namespace cloudmcdm;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Export, CsvRoundTripsExactly) {
  const auto d = forward_cloud({80, 4, 1}, 500, 3);
  const auto csv = droplets_to_csv(d);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,mu");
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    EXPECT_EQ(std::stod(line.substr(0, comma)), d.droplets[i].x);
    EXPECT_EQ(std::stod(line.substr(comma + 1)), d.droplets[i].mu);
    ++i;
  }
  EXPECT_EQ(i, d.droplets.size());
}

TEST(Export, SvgContainsDropletsAndOverlays) {
  const auto scheme = default_grade_scheme();
  const auto a = forward_cloud({83, 7, 3}, 300, 1);
  const auto b = forward_cloud({88, 5, 2}, 200, 2);
  const auto svg = cloud_svg({{"before", a}, {"after", b}}, scheme, {.title = "t"});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // Droplets off the 0-100 axis are not drawn.
  std::size_t inside = 0;
  for (const auto* d : {&a, &b})
    for (const auto& p : d->droplets) inside += p.x >= 0 && p.x <= 100;
  EXPECT_LT(inside, 500u);
  EXPECT_EQ(count(svg, "<circle"), inside);
  for (const auto& band : scheme.bands) EXPECT_NE(svg.find(band.label), std::string::npos);
  EXPECT_NE(svg.find("before"), std::string::npos);
  EXPECT_EQ(svg, cloud_svg({{"before", a}, {"after", b}}, scheme, {.title = "t"}));
  const auto bare = cloud_svg({{"before", a}}, scheme, {.grade_overlays = false});
  EXPECT_EQ(count(bare, "stroke-dasharray"), 0u);
}
