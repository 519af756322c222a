#include <algorithm>
#include <map>

#include "proc2bpmn/bpmn.hpp"

namespace proc2bpmn {

namespace {

Bounds default_size(NodeKind kind) {
  switch (kind) {
    case NodeKind::kTask: return {0, 0, kTaskWidth, kTaskHeight};
    case NodeKind::kExclusiveGateway: return {0, 0, kGatewaySize, kGatewaySize};
    case NodeKind::kStartEvent:
    case NodeKind::kEndEvent: return {0, 0, kEventSize, kEventSize};
  }
  return {0, 0, kTaskWidth, kTaskHeight};
}

/// Longest-path distance from the start event, in node order.
std::vector<int> columns_of(const BpmnModel& model) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.nodes.size(); ++i) index[model.nodes[i].id] = i;

  std::vector<int> indegree(model.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> next(model.nodes.size());
  for (const SequenceFlow& flow : model.flows) {
    auto s = index.find(flow.source);
    auto t = index.find(flow.target);
    if (s == index.end() || t == index.end()) continue;
    next[s->second].push_back(t->second);
    ++indegree[t->second];
  }

  std::vector<int> column(model.nodes.size(), 0);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < model.nodes.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  // Kahn's algorithm; pop the smallest index so the result is deterministic.
  while (!ready.empty()) {
    auto smallest = std::min_element(ready.begin(), ready.end());
    const std::size_t current = *smallest;
    ready.erase(smallest);
    for (std::size_t target : next[current]) {
      column[target] = std::max(column[target], column[current] + 1);
      if (--indegree[target] == 0) ready.push_back(target);
    }
  }
  return column;
}

}  // namespace

BpmnModel layout(BpmnModel model) {
  const std::vector<int> column = columns_of(model);
  const int max_column = column.empty() ? 0 : *std::max_element(column.begin(), column.end());

  // Band index per node; a model without lanes uses one implicit band.
  const std::size_t bands = std::max<std::size_t>(1, model.lanes.size());
  std::vector<std::size_t> band(model.nodes.size(), 0);
  for (std::size_t i = 0; i < model.nodes.size(); ++i) {
    for (std::size_t l = 0; l < model.lanes.size(); ++l) {
      const auto& members = model.lanes[l].members;
      if (std::find(members.begin(), members.end(), model.nodes[i].id) != members.end()) band[i] = l;
    }
  }

  // Nodes sharing a (band, column) cell, in creation order.
  std::map<std::pair<std::size_t, int>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < model.nodes.size(); ++i) cells[{band[i], column[i]}].push_back(i);

  std::vector<int> band_height(bands, kLaneBand);
  for (const auto& [cell, members] : cells) {
    band_height[cell.first] = std::max(band_height[cell.first], kLaneBand * static_cast<int>(members.size()));
  }
  std::vector<int> band_top(bands, 0);
  for (std::size_t b = 1; b < bands; ++b) band_top[b] = band_top[b - 1] + band_height[b - 1];

  const int lane_width = kColumnOrigin + max_column * kColumnPitch + kTaskWidth + kColumnOrigin - kLaneHeaderWidth;
  const int total_height = band_top.back() + band_height.back();
  model.pool_bounds = Bounds{0, 0, lane_width + kLaneHeaderWidth, total_height};
  for (std::size_t l = 0; l < model.lanes.size(); ++l) {
    model.lanes[l].bounds = Bounds{kLaneHeaderWidth, band_top[l], lane_width, band_height[l]};
  }

  for (const auto& [cell, members] : cells) {
    const int slot = band_height[cell.first] / static_cast<int>(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      Node& node = model.nodes[members[k]];
      Bounds bounds = default_size(node.kind);
      const int center = band_top[cell.first] + slot * static_cast<int>(k) + slot / 2;
      bounds.x = kColumnOrigin + cell.second * kColumnPitch;
      bounds.y = center - bounds.height / 2;
      node.bounds = bounds;
    }
  }

  for (SequenceFlow& flow : model.flows) {
    flow.waypoints.clear();
    const Node* source = model.node(flow.source);
    const Node* target = model.node(flow.target);
    if (source == nullptr || target == nullptr) continue;
    const Point from = source->bounds->right_center();
    const Point to = target->bounds->left_center();
    flow.waypoints.push_back(from);
    if (from.y != to.y) flow.waypoints.push_back({from.x, to.y});
    flow.waypoints.push_back(to);
  }
  return model;
}

}  // namespace proc2bpmn
