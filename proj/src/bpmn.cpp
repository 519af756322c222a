#include "proc2bpmn/bpmn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kStartEvent: return "StartEvent";
    case NodeKind::kEndEvent: return "EndEvent";
    case NodeKind::kTask: return "Task";
    case NodeKind::kExclusiveGateway: return "ExclusiveGateway";
  }
  return "Task";
}

const Node* BpmnModel::node(std::string_view id) const {
  for (const Node& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const Lane* BpmnModel::lane_of(std::string_view node_id) const {
  for (const Lane& lane : lanes) {
    if (std::find(lane.members.begin(), lane.members.end(), node_id) != lane.members.end()) return &lane;
  }
  return nullptr;
}

std::size_t BpmnModel::count(NodeKind kind) const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.kind == kind; }));
}

namespace {

class ModelBuilder {
 public:
  explicit ModelBuilder(const Lexicon& lexicon) : lexicon_(lexicon) {}

  std::string add_node(NodeKind kind, std::string label, std::string who = {}) {
    Node node;
    node.id = std::string(to_string(kind)) + '_' + std::to_string(++counters_[kind]);
    node.kind = kind;
    node.label = std::move(label);
    if (kind == NodeKind::kTask) {
      std::istringstream words(node.label);
      std::string verb;
      words >> verb;
      node.verb_type = lexicon_.classify_verb(verb);
    }
    who_.push_back(std::move(who));
    model_.nodes.push_back(std::move(node));
    return model_.nodes.back().id;
  }

  void connect(const std::string& source, const std::string& target, std::string label = {}) {
    SequenceFlow flow;
    flow.id = "SequenceFlow_" + std::to_string(model_.flows.size() + 1);
    flow.source = source;
    flow.target = target;
    flow.condition_label = std::move(label);
    model_.flows.push_back(std::move(flow));
  }

  Node& node(const std::string& id) {
    return *std::find_if(model_.nodes.begin(), model_.nodes.end(), [&](const Node& n) { return n.id == id; });
  }

  BpmnModel finish(std::string pool_name) {
    model_.pool_name = std::move(pool_name);
    assign_lanes();
    return std::move(model_);
  }

 private:
  // One lane per distinct Who (first appearance); tasks without Who, events
  // and gateways join the nearest preceding task's lane, the start event the
  // nearest following one.
  void assign_lanes() {
    std::vector<std::string> lane_names;
    for (const std::string& who : who_) {
      if (!who.empty() && std::find(lane_names.begin(), lane_names.end(), who) == lane_names.end()) {
        lane_names.push_back(who);
      }
    }
    if (lane_names.empty()) return;

    const std::size_t n = model_.nodes.size();
    std::vector<std::string> lane(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (model_.nodes[i].kind == NodeKind::kTask) lane[i] = who_[i];
    }
    auto task_lane_before = [&](std::size_t i) -> std::string {
      for (std::size_t j = i; j-- > 0;) {
        if (model_.nodes[j].kind == NodeKind::kTask && !lane[j].empty()) return lane[j];
      }
      return {};
    };
    auto task_lane_after = [&](std::size_t i) -> std::string {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (model_.nodes[j].kind == NodeKind::kTask && !who_[j].empty()) return who_[j];
      }
      return {};
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (!lane[i].empty()) continue;
      const bool start = model_.nodes[i].kind == NodeKind::kStartEvent;
      lane[i] = start ? task_lane_after(i) : task_lane_before(i);
      if (lane[i].empty()) lane[i] = start ? task_lane_before(i) : task_lane_after(i);
    }

    for (std::size_t l = 0; l < lane_names.size(); ++l) {
      Lane entry;
      entry.id = "Lane_" + std::to_string(l + 1);
      entry.name = lane_names[l];
      for (std::size_t i = 0; i < n; ++i) {
        if (lane[i] == lane_names[l]) entry.members.push_back(model_.nodes[i].id);
      }
      model_.lanes.push_back(std::move(entry));
    }
  }

  const Lexicon& lexicon_;
  BpmnModel model_;
  std::map<NodeKind, int> counters_;
  std::vector<std::string> who_;
};

struct Tail {
  std::string node;
  std::string label;  // condition still owed to the next flow
};

}  // namespace

BpmnModel build_model(const ProcessTable& table, const Lexicon& lexicon, std::string pool_name) {
  check_table(table);
  const bool has_activity = std::any_of(table.rows.begin(), table.rows.end(), [](const TableRow& row) {
    return !row.terminated && !row.activity.empty() && row.activity != kStartActivity &&
           row.activity != kBranchEndMarker;
  });
  if (!has_activity) throw EmptyProcess("process table has no activities");

  ModelBuilder builder(lexicon);
  std::vector<Tail> tails{{builder.add_node(NodeKind::kStartEvent, std::string(kStartActivity)), ""}};

  auto connect_tails = [&](const std::string& target) {
    for (const Tail& tail : tails) builder.connect(tail.node, target, tail.label);
    tails.clear();
  };

  bool terminated = false;
  std::size_t i = 1;
  while (i < table.rows.size()) {
    const TableRow& row = table.rows[i];
    if (row.terminated) {
      if (!tails.empty()) connect_tails(builder.add_node(NodeKind::kEndEvent, ""));
      terminated = true;
      ++i;
      continue;
    }
    if (!row.order.branched()) {
      const std::string task = builder.add_node(NodeKind::kTask, row.activity, row.who);
      connect_tails(task);
      tails = {{task, ""}};
      ++i;
      continue;
    }

    // Branched block: rows i..j-1 share one sequence number.
    std::size_t j = i;
    while (j < table.rows.size() && table.rows[j].order.seq == row.order.seq) ++j;
    const std::string split = builder.add_node(NodeKind::kExclusiveGateway, "");
    builder.node(split).direction = GatewayDirection::kDiverging;
    connect_tails(split);

    std::vector<Tail> rejoining;
    std::size_t k = i;
    while (k < j) {
      const char letter = *table.rows[k].order.branch;
      Tail cursor{split, table.rows[k].condition};
      bool ended = false;
      for (; k < j && *table.rows[k].order.branch == letter; ++k) {
        const TableRow& step = table.rows[k];
        if (step.activity.empty()) continue;  // skip branch
        if (step.activity == kBranchEndMarker) {
          const std::string end = builder.add_node(NodeKind::kEndEvent, "");
          builder.connect(cursor.node, end, cursor.label);
          ended = true;
          continue;
        }
        const std::string task = builder.add_node(NodeKind::kTask, step.activity, step.who);
        builder.connect(cursor.node, task, cursor.label);
        cursor = {task, ""};
      }
      if (!ended) rejoining.push_back(cursor);
    }

    if (rejoining.size() >= 2) {
      const std::string join = builder.add_node(NodeKind::kExclusiveGateway, "");
      builder.node(join).direction = GatewayDirection::kConverging;
      for (const Tail& tail : rejoining) builder.connect(tail.node, join, tail.label);
      tails = {{join, ""}};
    } else {
      tails = rejoining;
    }
    i = j;
  }
  if (!terminated && !tails.empty()) connect_tails(builder.add_node(NodeKind::kEndEvent, ""));

  return builder.finish(std::move(pool_name));
}

std::vector<std::string> model_violations(const BpmnModel& model) {
  std::vector<std::string> out;
  std::set<std::string> ids;
  for (const Node& node : model.nodes) {
    if (!ids.insert(node.id).second) out.push_back("duplicate id " + node.id);
  }
  for (const SequenceFlow& flow : model.flows) {
    if (!ids.insert(flow.id).second) out.push_back("duplicate id " + flow.id);
  }
  if (model.count(NodeKind::kStartEvent) != 1) out.push_back("expected exactly one start event");
  if (model.count(NodeKind::kEndEvent) < 1) out.push_back("expected at least one end event");

  std::map<std::string, int> in, outgoing;
  std::map<std::string, std::vector<std::string>> forward, backward;
  for (const SequenceFlow& flow : model.flows) {
    const Node* source = model.node(flow.source);
    const Node* target = model.node(flow.target);
    if (source == nullptr || target == nullptr) {
      out.push_back(flow.id + " references a missing node");
      continue;
    }
    ++outgoing[flow.source];
    ++in[flow.target];
    forward[flow.source].push_back(flow.target);
    backward[flow.target].push_back(flow.source);
    if (!flow.condition_label.empty() &&
        !(source->kind == NodeKind::kExclusiveGateway && source->direction == GatewayDirection::kDiverging)) {
      out.push_back(flow.id + " carries a condition but does not leave a diverging gateway");
    }
  }

  for (const Node& node : model.nodes) {
    const int i = in[node.id];
    const int o = outgoing[node.id];
    auto arity = [&](bool ok, const char* expected) {
      if (!ok) {
        out.push_back(node.id + " has " + std::to_string(i) + " in / " + std::to_string(o) + " out, expected " + expected);
      }
    };
    switch (node.kind) {
      case NodeKind::kTask: arity(i == 1 && o == 1, "1/1"); break;
      case NodeKind::kStartEvent: arity(i == 0 && o == 1, "0/1"); break;
      case NodeKind::kEndEvent: arity(i >= 1 && o == 0, ">=1/0"); break;
      case NodeKind::kExclusiveGateway:
        if (node.direction == GatewayDirection::kDiverging) {
          arity(i == 1 && o >= 2, "1/>=2");
        } else if (node.direction == GatewayDirection::kConverging) {
          arity(i >= 2 && o == 1, ">=2/1");
        } else {
          out.push_back(node.id + " gateway without direction");
        }
        break;
    }
  }

  auto reach = [](const std::vector<std::string>& seeds, std::map<std::string, std::vector<std::string>>& edges) {
    std::set<std::string> seen(seeds.begin(), seeds.end());
    std::vector<std::string> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
      const std::string current = stack.back();
      stack.pop_back();
      for (const std::string& next : edges[current]) {
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    return seen;
  };
  std::vector<std::string> starts, ends;
  for (const Node& node : model.nodes) {
    if (node.kind == NodeKind::kStartEvent) starts.push_back(node.id);
    if (node.kind == NodeKind::kEndEvent) ends.push_back(node.id);
  }
  const std::set<std::string> from_start = reach(starts, forward);
  const std::set<std::string> to_end = reach(ends, backward);
  for (const Node& node : model.nodes) {
    if (!from_start.contains(node.id) || !to_end.contains(node.id)) {
      out.push_back(node.id + " is not on a start-to-end path");
    }
  }

  if (!model.lanes.empty()) {
    std::map<std::string, int> membership;
    for (const Lane& lane : model.lanes) {
      for (const std::string& member : lane.members) {
        if (model.node(member) == nullptr) out.push_back(lane.id + " lists missing node " + member);
        ++membership[member];
      }
    }
    for (const Node& node : model.nodes) {
      if (membership[node.id] != 1) {
        out.push_back(node.id + " belongs to " + std::to_string(membership[node.id]) + " lanes");
      }
    }
  }
  return out;
}

}  // namespace proc2bpmn
