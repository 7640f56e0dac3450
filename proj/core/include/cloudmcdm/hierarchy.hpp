#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloudmcdm {

enum class Layer { kObjective, kCriterion, kIndicator };
enum class Direction { kBenefit, kCost };

std::string_view to_string(Layer layer);
std::string_view to_string(Direction direction);

struct IndicatorNode {
  std::string id;
  std::string label;
  Layer layer = Layer::kIndicator;
  std::optional<Direction> direction;  // leaves only
  std::optional<std::string> parent_id;
  std::vector<std::string> children;   // order defines column order downstream
};

/// Three-layer evaluation tree: objective root, criteria, indicator leaves.
/// Immutable once loaded; share it read-only.
class IndexHierarchy {
 public:
  IndexHierarchy() = default;
  /// Later duplicates of an id are dropped from the node table and recorded
  /// for validate_hierarchy to report.
  IndexHierarchy(std::vector<IndicatorNode> nodes, std::string root_id);

  const std::string& root_id() const { return root_id_; }
  const std::map<std::string, IndicatorNode>& nodes() const { return nodes_; }
  const IndicatorNode& node(const std::string& id) const;
  bool contains(const std::string& id) const { return nodes_.count(id) != 0; }

  /// Criterion ids in child order of the root.
  std::vector<std::string> criteria() const;

  const std::vector<std::string>& duplicate_ids() const { return duplicate_ids_; }

 private:
  std::map<std::string, IndicatorNode> nodes_;
  std::string root_id_;
  std::vector<std::string> duplicate_ids_;
};

enum class ViolationKind {
  kMissingRoot,
  kDuplicateId,
  kOrphanNode,
  kUnknownChild,
  kCycle,
  kWrongLayer,
  kTooDeep,
  kEmptyCriterion,
  kNoCriteria,
  kLeafMissingDirection,
  kNonLeafDirection,
  kBadId,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string node_id;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Structural checks; violations are returned as data, never thrown.
ValidationReport validate_hierarchy(const IndexHierarchy& h);

/// Leaf ids in depth-first child order, optionally restricted to one
/// criterion subtree. Throws InputError for an unknown criterion id.
std::vector<std::string> leaf_indicators(
    const IndexHierarchy& h, const std::optional<std::string>& criterion_id = std::nullopt);

/// Direction of each listed leaf, in the same order.
std::vector<Direction> leaf_directions(const IndexHierarchy& h,
                                       const std::vector<std::string>& leaf_ids);

/// Parses the nested JSON form:
///   {"root": {"id": "G", "label": "...", "children": [
///       {"id": "C1", "children": [{"id": "C11", "direction": "benefit"}]}]}}
/// Duplicate ids are kept as violations for validate_hierarchy rather than
/// rejected here. Syntax and type errors throw InputError.
IndexHierarchy parse_hierarchy_json(std::string_view text, const std::string& source = "<hierarchy>");
IndexHierarchy load_hierarchy(const std::string& path);

}  // namespace cloudmcdm
