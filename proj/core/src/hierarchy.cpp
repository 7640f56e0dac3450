#include "cloudmcdm/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "cloudmcdm/error.hpp"
#include "io_util.hpp"

namespace cloudmcdm {

namespace {

constexpr std::size_t kMaxIdLength = 32;

bool is_valid_id(const std::string& id) {
  if (id.empty() || id.size() > kMaxIdLength) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7f && c != ',' && c != '"';
  });
}

}  // namespace

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::kObjective: return "objective";
    case Layer::kCriterion: return "criterion";
    case Layer::kIndicator: return "indicator";
  }
  return "?";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::kBenefit ? "benefit" : "cost";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMissingRoot: return "missing root";
    case ViolationKind::kDuplicateId: return "duplicate id";
    case ViolationKind::kOrphanNode: return "orphan node";
    case ViolationKind::kUnknownChild: return "unknown child";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kWrongLayer: return "wrong layer";
    case ViolationKind::kTooDeep: return "too deep";
    case ViolationKind::kEmptyCriterion: return "empty criterion";
    case ViolationKind::kNoCriteria: return "no criteria";
    case ViolationKind::kLeafMissingDirection: return "leaf missing direction";
    case ViolationKind::kNonLeafDirection: return "non-leaf direction";
    case ViolationKind::kBadId: return "bad id";
  }
  return "?";
}

IndexHierarchy::IndexHierarchy(std::vector<IndicatorNode> nodes, std::string root_id)
    : root_id_(std::move(root_id)) {
  for (auto& n : nodes) {
    std::string id = n.id;
    if (!nodes_.emplace(id, std::move(n)).second) duplicate_ids_.push_back(std::move(id));
  }
}

const IndicatorNode& IndexHierarchy::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw InputError("unknown node id '" + id + "'");
  return it->second;
}

std::vector<std::string> IndexHierarchy::criteria() const {
  if (!contains(root_id_)) return {};
  return node(root_id_).children;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_hierarchy(const IndexHierarchy& h) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, const std::string& id, std::string msg) {
    report.violations.push_back({kind, id, std::move(msg)});
  };

  for (const auto& id : h.duplicate_ids()) add(ViolationKind::kDuplicateId, id, "id '" + id + "' appears more than once");
  for (const auto& [id, n] : h.nodes()) {
    if (!is_valid_id(id)) add(ViolationKind::kBadId, id, "id must be 1-32 printable ASCII characters without spaces, commas or quotes");
  }

  if (!h.contains(h.root_id())) {
    add(ViolationKind::kMissingRoot, h.root_id(), "root '" + h.root_id() + "' is not a node");
    return report;
  }

  std::set<std::string> visited;
  std::set<std::string> on_path;
  const std::function<void(const std::string&, int)> visit = [&](const std::string& id, int depth) {
    const auto& n = h.node(id);
    visited.insert(id);
    on_path.insert(id);

    const Layer expected = depth == 0 ? Layer::kObjective : depth == 1 ? Layer::kCriterion : Layer::kIndicator;
    if (depth >= 3) {
      add(ViolationKind::kTooDeep, id, "node '" + id + "' is below the indicator layer");
    } else if (n.layer != expected) {
      add(ViolationKind::kWrongLayer, id,
          "node '" + id + "' is " + std::string(to_string(n.layer)) + " but sits at the " +
              std::string(to_string(expected)) + " layer");
    }

    const bool leaf = n.children.empty();
    if (depth == 0 && leaf) add(ViolationKind::kNoCriteria, id, "objective '" + id + "' has no criteria");
    if (depth == 1 && leaf) add(ViolationKind::kEmptyCriterion, id, "criterion '" + id + "' has no indicators");
    if (depth >= 2 && leaf && !n.direction) add(ViolationKind::kLeafMissingDirection, id, "leaf '" + id + "' has no direction");
    if (!leaf && n.direction) add(ViolationKind::kNonLeafDirection, id, "non-leaf '" + id + "' carries a direction");
    if (depth == 1 && leaf && n.direction) add(ViolationKind::kNonLeafDirection, id, "criterion '" + id + "' carries a direction");

    for (const auto& child : n.children) {
      if (!h.contains(child)) {
        add(ViolationKind::kUnknownChild, id, "node '" + id + "' lists unknown child '" + child + "'");
        continue;
      }
      if (on_path.count(child)) {
        add(ViolationKind::kCycle, child, "cycle through '" + child + "'");
        continue;
      }
      if (visited.count(child)) {
        add(ViolationKind::kDuplicateId, child, "node '" + child + "' is reachable from more than one parent");
        continue;
      }
      const auto& c = h.node(child);
      if (c.parent_id && *c.parent_id != id) {
        add(ViolationKind::kOrphanNode, child, "node '" + child + "' names parent '" + *c.parent_id + "' but is listed under '" + id + "'");
      }
      visit(child, depth + 1);
    }
    on_path.erase(id);
  };
  visit(h.root_id(), 0);

  for (const auto& [id, n] : h.nodes()) {
    if (!visited.count(id)) add(ViolationKind::kOrphanNode, id, "node '" + id + "' is not reachable from the root");
  }
  return report;
}

std::vector<std::string> leaf_indicators(const IndexHierarchy& h, const std::optional<std::string>& criterion_id) {
  std::vector<std::string> leaves;
  auto collect = [&](const std::string& crit) {
    for (const auto& leaf : h.node(crit).children) leaves.push_back(leaf);
  };
  if (criterion_id) {
    const auto crits = h.criteria();
    if (std::find(crits.begin(), crits.end(), *criterion_id) == crits.end()) {
      throw InputError("unknown criterion '" + *criterion_id + "'");
    }
    collect(*criterion_id);
  } else {
    for (const auto& crit : h.criteria()) collect(crit);
  }
  return leaves;
}

std::vector<Direction> leaf_directions(const IndexHierarchy& h, const std::vector<std::string>& leaf_ids) {
  std::vector<Direction> out;
  out.reserve(leaf_ids.size());
  for (const auto& id : leaf_ids) {
    const auto& n = h.node(id);
    if (!n.direction) throw InputError("leaf '" + id + "' has no direction");
    out.push_back(*n.direction);
  }
  return out;
}

namespace {

using nlohmann::json;

std::optional<Layer> parse_layer(const std::string& s) {
  if (s == "objective") return Layer::kObjective;
  if (s == "criterion") return Layer::kCriterion;
  if (s == "indicator") return Layer::kIndicator;
  return std::nullopt;
}

void parse_node(const json& j, const std::optional<std::string>& parent, int depth,
                std::vector<IndicatorNode>& out, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": node must be a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) throw InputError(source + ": node without string \"id\"");

  IndicatorNode node;
  node.id = j["id"].get<std::string>();
  node.label = j.value("label", node.id);
  node.parent_id = parent;
  node.layer = depth == 0 ? Layer::kObjective : depth == 1 ? Layer::kCriterion : Layer::kIndicator;
  if (j.contains("layer")) {
    auto layer = parse_layer(j["layer"].get<std::string>());
    if (!layer) throw InputError(source + ": node '" + node.id + "' has unknown layer");
    node.layer = *layer;
  }
  if (j.contains("direction")) {
    const auto d = j["direction"].get<std::string>();
    if (d == "benefit") node.direction = Direction::kBenefit;
    else if (d == "cost") node.direction = Direction::kCost;
    else throw InputError(source + ": node '" + node.id + "' has direction '" + d + "' (expected benefit or cost)");
  }

  const std::size_t self = out.size();
  out.push_back(node);
  if (j.contains("children")) {
    if (!j["children"].is_array()) throw InputError(source + ": \"children\" of '" + node.id + "' must be an array");
    for (const auto& c : j["children"]) {
      if (!c.is_object() || !c.contains("id")) throw InputError(source + ": child of '" + node.id + "' lacks an id");
      out[self].children.push_back(c["id"].get<std::string>());
      parse_node(c, node.id, depth + 1, out, source);
    }
  }
}

}  // namespace

IndexHierarchy parse_hierarchy_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("root")) throw InputError(source + ": missing \"root\" object");

  std::vector<IndicatorNode> nodes;
  try {
    parse_node(doc["root"], std::nullopt, 0, nodes, source);
  } catch (const json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  std::string root = nodes.front().id;
  return IndexHierarchy(std::move(nodes), std::move(root));
}

IndexHierarchy load_hierarchy(const std::string& path) {
  return parse_hierarchy_json(detail::read_text_file(path), path);
}

}  // namespace cloudmcdm
