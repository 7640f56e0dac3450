#include "cloudmcdm/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cloudmcdm {

namespace {

void append_shortest(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

std::string fixed(double v, int digits = 2) {
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return buf.data();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

std::string droplets_to_csv(const DropletSet& drops) {
  std::string out = "x,mu\n";
  out.reserve(drops.droplets.size() * 40);
  for (const auto& d : drops.droplets) {
    append_shortest(out, d.x);
    out += ',';
    append_shortest(out, d.mu);
    out += '\n';
  }
  return out;
}

std::string cloud_svg(const std::vector<SvgSeries>& series, const GradeScheme& scheme, const SvgOptions& options) {
  const double left = 50, right = 20, top = 30, bottom = 40;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto sx = [&](double x) { return left + plot_w * (x - kScoreMin) / (kScoreMax - kScoreMin); };
  auto sy = [&](double mu) { return top + plot_h * (1.0 - mu); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg += "<text x=\"" + fixed(left) + "\" y=\"18\" font-size=\"13\">" + escape_xml(options.title) + "</text>\n";
  }

  // Axes and ticks.
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fixed(sx(0)) + "\" y1=\"" + fixed(sy(0)) + "\" x2=\"" + fixed(sx(100)) + "\" y2=\"" + fixed(sy(0)) + "\"/>\n";
  svg += "<line x1=\"" + fixed(sx(0)) + "\" y1=\"" + fixed(sy(0)) + "\" x2=\"" + fixed(sx(0)) + "\" y2=\"" + fixed(sy(1)) + "\"/>\n";
  svg += "</g>\n<g text-anchor=\"middle\">\n";
  for (int t = 0; t <= 100; t += 10) {
    svg += "<text x=\"" + fixed(sx(t)) + "\" y=\"" + fixed(sy(0) + 15) + "\">" + std::to_string(t) + "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double mu = t * 0.25;
    svg += "<text x=\"" + fixed(left - 18) + "\" y=\"" + fixed(sy(mu) + 4) + "\">" + fixed(mu) + "</text>\n";
  }
  svg += "</g>\n";

  if (options.grade_overlays) {
    svg += "<g fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\">\n";
    const auto clouds = grade_clouds(scheme);
    for (std::size_t k = 0; k < clouds.size(); ++k) {
      const auto& c = clouds[k];
      std::string points;
      for (int step = 0; step <= 400; ++step) {
        const double x = kScoreMin + (kScoreMax - kScoreMin) * step / 400.0;
        const double z = (x - c.ex) / c.en;
        points += fixed(sx(x)) + "," + fixed(sy(std::exp(-0.5 * z * z))) + " ";
      }
      svg += "<polyline points=\"" + points + "\"/>\n";
      svg += "<text x=\"" + fixed(sx(c.ex)) + "\" y=\"" + fixed(sy(1) - 4) + "\" stroke=\"none\" fill=\"#666666\" text-anchor=\"middle\">" +
             escape_xml(scheme.bands[k].label) + "</text>\n";
    }
    svg += "</g>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % kPalette.size()];
    svg += "<g fill=\"" + std::string(colour) + "\" fill-opacity=\"0.5\">\n";
    for (const auto& d : series[s].drops.droplets) {
      if (d.x < kScoreMin || d.x > kScoreMax) continue;
      svg += "<circle cx=\"" + fixed(sx(d.x)) + "\" cy=\"" + fixed(sy(d.mu)) + "\" r=\"1.2\"/>\n";
    }
    svg += "</g>\n";
    const double ly = top + 14.0 * static_cast<double>(s);
    svg += "<text x=\"" + fixed(left + 8) + "\" y=\"" + fixed(ly + 12) + "\" fill=\"" + colour + "\">" +
           escape_xml(series[s].label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace cloudmcdm
