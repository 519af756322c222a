#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proc2bpmn/lexicon.hpp"
#include "proc2bpmn/process_table.hpp"

namespace proc2bpmn {

enum class NodeKind { kStartEvent, kEndEvent, kTask, kExclusiveGateway };

std::string_view to_string(NodeKind kind);

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Diagram pixels, origin top-left.
struct Bounds {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  Point left_center() const { return {x, y + height / 2}; }
  Point right_center() const { return {x + width, y + height / 2}; }
  bool overlaps(const Bounds& other) const {
    return x < other.x + other.width && other.x < x + width && y < other.y + other.height && other.y < y + height;
  }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class GatewayDirection { kNone, kDiverging, kConverging };

struct Node {
  std::string id;
  NodeKind kind = NodeKind::kTask;
  std::string label;
  GatewayDirection direction = GatewayDirection::kNone;
  VerbType verb_type = VerbType::kGenericAction;  // tasks only
  std::optional<Bounds> bounds;

  friend bool operator==(const Node&, const Node&) = default;
};

struct SequenceFlow {
  std::string id;
  std::string source;
  std::string target;
  std::string condition_label;
  std::vector<Point> waypoints;

  friend bool operator==(const SequenceFlow&, const SequenceFlow&) = default;
};

struct Lane {
  std::string id;
  std::string name;
  std::vector<std::string> members;  // node ids, creation order
  std::optional<Bounds> bounds;

  friend bool operator==(const Lane&, const Lane&) = default;
};

struct BpmnModel {
  std::string process_id = "Process_1";
  std::string pool_name;
  std::vector<Lane> lanes;
  std::vector<Node> nodes;
  std::vector<SequenceFlow> flows;
  std::optional<Bounds> pool_bounds;

  const Node* node(std::string_view id) const;
  /// Lane holding `node_id`, or nullptr.
  const Lane* lane_of(std::string_view node_id) const;
  std::size_t count(NodeKind kind) const;

  friend bool operator==(const BpmnModel&, const BpmnModel&) = default;
};

// Default shape sizes.
inline constexpr int kTaskWidth = 100;
inline constexpr int kTaskHeight = 80;
inline constexpr int kEventSize = 36;
inline constexpr int kGatewaySize = 50;
// Layout constants.
inline constexpr int kColumnOrigin = 60;
inline constexpr int kColumnPitch = 160;
inline constexpr int kLaneBand = 120;
inline constexpr int kLaneHeaderWidth = 30;

/// Compiles a valid table into nodes, flows and lanes.  Throws EmptyProcess
/// for a table without activities and TableInvariantError for an invalid one.
/// `lexicon` classifies task verbs (message tasks get an extension attribute).
BpmnModel build_model(const ProcessTable& table, const Lexicon& lexicon = Lexicon::builtin(),
                      std::string pool_name = "process");

/// Layered left-to-right layout: column = longest path from the start event,
/// lanes stacked top-down.  Pure; relayout gives identical geometry.
BpmnModel layout(BpmnModel model);

/// BPMN 2.0 XML with DI.  Throws UnlaidModel when geometry is missing.
std::string serialize_xml(const BpmnModel& model);

/// Well-formedness problems (arity, reachability, lane partition, ids); empty
/// when the model is well formed.
std::vector<std::string> model_violations(const BpmnModel& model);

}  // namespace proc2bpmn
