// cloudmcdm: command-line front end for the evaluation pipeline.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifdef CLOUDMCDM_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include "cloudmcdm/cloud.hpp"
#include "cloudmcdm/error.hpp"
#include "cloudmcdm/export.hpp"
#include "cloudmcdm/hierarchy.hpp"
#include "cloudmcdm/iahp.hpp"
#include "cloudmcdm/pipeline.hpp"
#include "cloudmcdm/version.hpp"

namespace {

using namespace cloudmcdm;
using ojson = nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitFailure = 1;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> sigma;
  std::optional<double> tau;
  std::optional<int> max_iter;
};

struct Prepared {
  LoadedInputs inputs;
  std::uint64_t seed = 0;
};

Prepared prepare(const std::string& config_path, const GlobalOptions& g) {
  auto cfg = load_config(config_path);
  if (g.sigma) cfg.repair.sigma = *g.sigma;
  if (g.tau) cfg.repair.tau = *g.tau;
  if (g.max_iter) cfg.repair.max_iter = *g.max_iter;
  cfg.repair.validate();
  const auto seed = resolve_seed(g.seed, cfg.seed, std::getenv(kSeedEnvVar));
  return {load_inputs(cfg), seed};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
}

int run_validate(const std::string& config_path, const GlobalOptions& g) {
  const auto p = prepare(config_path, g);
  const auto& in = p.inputs;
  ojson out;
  out["status"] = "ok";
  out["scenario"] = in.config.scenario;
  out["criteria"] = in.hierarchy.criteria().size();
  out["indicators"] = leaf_indicators(in.hierarchy).size();
  out["objects"] = in.data.values.rows();
  ojson matrices = ojson::array();
  auto describe = [&](const std::string& group, const JudgmentMatrix& m) {
    const auto c = consistency_ratio(m);
    matrices.push_back({{"group", group}, {"order", m.order()}, {"lambda_max", c.lambda_max}, {"cr", c.cr},
                        {"needs_repair", c.cr >= in.config.repair.cr_threshold}});
  };
  if (in.criteria_judgment) describe(in.hierarchy.root_id(), *in.criteria_judgment);
  for (const auto& [crit, m] : in.indicator_judgments) describe(crit, m);
  out["judgments"] = matrices;
  std::cout << out.dump(2) << "\n";
  return 0;
}

ojson weight_group(const LayerWeights& lw, bool subjective, bool objective, bool combined) {
  ojson j = {{"parent", lw.parent_id}, {"ids", lw.combined.ids}};
  auto vec = [](const WeightVector& w) { return std::vector<double>(w.weights.data(), w.weights.data() + w.weights.size()); };
  if (subjective) {
    j["subjective"] = vec(lw.subjective);
    if (lw.repair) j["repair"] = {{"repairs", lw.repair->repairs}, {"initial_cr", lw.repair->initial_cr}, {"final_cr", lw.repair->final_cr}};
  }
  if (objective) j["objective"] = vec(lw.objective);
  if (combined) {
    j["theta"] = {lw.theta[0], lw.theta[1]};
    j["combined"] = vec(lw.combined);
    if (!subjective) j["subjective"] = vec(lw.subjective);
    if (!objective) j["objective"] = vec(lw.objective);
  }
  return j;
}

int run_weights(const std::string& config_path, const GlobalOptions& g, bool subjective, bool objective, bool combined) {
  if (!subjective && !objective && !combined) subjective = objective = combined = true;
  const auto p = prepare(config_path, g);
  const auto report = evaluate(p.inputs, p.seed);
  ojson out;
  out["scenario"] = report.scenario;
  out["criteria"] = weight_group(report.criterion_weights, subjective, objective, combined);
  ojson groups = ojson::array();
  for (const auto& lw : report.indicator_weights) groups.push_back(weight_group(lw, subjective, objective, combined));
  out["indicators"] = groups;
  ojson global = {{"ids", report.global_combined.ids}};
  auto vec = [](const WeightVector& w) { return std::vector<double>(w.weights.data(), w.weights.data() + w.weights.size()); };
  if (subjective) global["subjective"] = vec(report.global_subjective);
  if (objective) global["objective"] = vec(report.global_objective);
  if (combined) global["combined"] = vec(report.global_combined);
  out["global"] = global;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_evaluate(const std::string& config_path, const GlobalOptions& g, const std::string& out_dir) {
  const auto p = prepare(config_path, g);
  const auto report = evaluate(p.inputs, p.seed);
  const auto json = report_to_json(report);
  if (out_dir.empty()) {
    std::cout << json;
    return 0;
  }
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", json);

  const auto n = p.inputs.config.export_droplets;
  const auto top = forward_cloud(report.comprehensive.cloud, n, export_seed(report, report.comprehensive.id));
  write_file(dir / "comprehensive_droplets.csv", droplets_to_csv(top));
  write_file(dir / "comprehensive.svg",
             cloud_svg({{report.scenario + " (" + report.comprehensive.id + ")", top}}, report.scheme,
                       {.title = "Comprehensive cloud: " + report.scenario}));

  std::vector<SvgSeries> series;
  for (const auto& c : report.criterion_clouds) {
    series.push_back({c.id, forward_cloud(c.cloud, n, export_seed(report, c.id))});
  }
  write_file(dir / "criteria.svg", cloud_svg(series, report.scheme, {.title = "Criterion clouds: " + report.scenario}));
  std::cerr << "wrote " << (dir / "report.json").string() << " (grade: " << report.grades.front().grade.label << ")\n";
  return 0;
}

int run_compare(const std::string& a, const std::string& b) {
  const auto cmp = compare_scenarios(load_report(a), load_report(b));
  std::cout << comparison_to_json(cmp);
  return 0;
}

int run_droplets(const std::string& config_path, const GlobalOptions& g, const std::string& level, std::size_t n,
                 const std::string& out_path, const std::string& svg_path) {
  const auto p = prepare(config_path, g);
  const auto report = evaluate(p.inputs, p.seed);
  const auto& lc = report.level(level);
  const auto drops = forward_cloud(lc.cloud, n, export_seed(report, level));
  const auto csv = droplets_to_csv(drops);
  if (out_path.empty()) std::cout << csv;
  else write_file(out_path, csv);
  if (!svg_path.empty()) write_file(svg_path, cloud_svg({{level, drops}}, report.scheme, {.title = level}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud-model multi-criteria evaluation with repaired AHP, entropy and combined weights"};
  app.set_version_flag("--version", std::string(cloudmcdm::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed (default: config, then $CLOUDMCDM_SEED)");
  app.add_option("--sigma", g.sigma, "Repair control parameter in (0, 1)");
  app.add_option("--tau", g.tau, "Repair distance threshold");
  app.add_option("--max-iter", g.max_iter, "Maximum repair iterations");

  std::string config;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config and every file it references");
  validate_cmd->add_option("config", config, "Config JSON")->required();

  bool subjective = false, objective = false, combined = false;
  auto* weights_cmd = app.add_subcommand("weights", "Print the weight tables as JSON");
  weights_cmd->add_option("config", config, "Config JSON")->required();
  weights_cmd->add_flag("--subjective", subjective, "Repaired-AHP weights");
  weights_cmd->add_flag("--objective", objective, "Entropy weights");
  weights_cmd->add_flag("--combined", combined, "Deviation-square-sum combined weights");

  std::string out_dir;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run the full evaluation");
  evaluate_cmd->add_option("config", config, "Config JSON")->required();
  evaluate_cmd->add_option("--out", out_dir, "Directory for report.json, droplet CSV and SVG diagrams");

  std::string report_a, report_b;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two evaluation reports");
  compare_cmd->add_option("reportA", report_a, "Baseline report JSON")->required();
  compare_cmd->add_option("reportB", report_b, "Changed report JSON")->required();

  std::string level, drop_out, drop_svg;
  std::size_t count = 0;
  auto* droplets_cmd = app.add_subcommand("droplets", "Export droplets of one level as CSV");
  droplets_cmd->add_option("config", config, "Config JSON")->required();
  droplets_cmd->add_option("--level", level, "Root, criterion or indicator id")->required();
  droplets_cmd->add_option("--n", count, "Number of droplets")->required()->check(CLI::PositiveNumber);
  droplets_cmd->add_option("--out", drop_out, "CSV path (default: stdout)");
  droplets_cmd->add_option("--svg", drop_svg, "Also write an SVG scatter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate_cmd) return run_validate(config, g);
    if (*weights_cmd) return run_weights(config, g, subjective, objective, combined);
    if (*evaluate_cmd) return run_evaluate(config, g, out_dir);
    if (*compare_cmd) return run_compare(report_a, report_b);
    if (*droplets_cmd) return run_droplets(config, g, level, count, drop_out, drop_svg);
  } catch (const cloudmcdm::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
