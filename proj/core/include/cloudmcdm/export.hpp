#pragma once

#include <string>
#include <vector>

#include "cloudmcdm/cloud.hpp"

namespace cloudmcdm {

/// "x,mu" header, one droplet per line, shortest round-trip decimals.
std::string droplets_to_csv(const DropletSet& drops);

struct SvgSeries {
  std::string label;
  DropletSet drops;
};

struct SvgOptions {
  int width = 800;
  int height = 420;
  std::string title;
  bool grade_overlays = true;
};

/// Scatter of (x, mu) droplets on a 0-100 by 0-1 frame, one colour per
/// series, with the expectation curve of every grade cloud overlaid.
std::string cloud_svg(const std::vector<SvgSeries>& series, const GradeScheme& scheme, const SvgOptions& options = {});

}  // namespace cloudmcdm
