#include <sstream>

#include "proc2bpmn/bpmn.hpp"
#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

namespace {

// Attribute values also escape whitespace controls, which XML parsers would
// otherwise normalize to spaces.
std::string escape(std::string_view text, bool attribute = true) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\n': out += attribute ? "&#10;" : "\n"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += attribute ? "&#9;" : "\t"; break;
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string element_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kStartEvent: return "bpmn:startEvent";
    case NodeKind::kEndEvent: return "bpmn:endEvent";
    case NodeKind::kTask: return "bpmn:task";
    case NodeKind::kExclusiveGateway: return "bpmn:exclusiveGateway";
  }
  return "bpmn:task";
}

std::string direction_name(GatewayDirection direction) {
  switch (direction) {
    case GatewayDirection::kDiverging: return "Diverging";
    case GatewayDirection::kConverging: return "Converging";
    case GatewayDirection::kNone: break;
  }
  return "Unspecified";
}

void write_bounds(std::ostream& out, const Bounds& b) {
  out << "        <dc:Bounds x=\"" << b.x << "\" y=\"" << b.y << "\" width=\"" << b.width << "\" height=\""
      << b.height << "\" />\n";
}

}  // namespace

std::string serialize_xml(const BpmnModel& model) {
  if (!model.pool_bounds) throw UnlaidModel("model has no pool geometry; run layout first");
  for (const Node& node : model.nodes) {
    if (!node.bounds) throw UnlaidModel(node.id + " has no bounds; run layout first");
  }
  for (const Lane& lane : model.lanes) {
    if (!lane.bounds) throw UnlaidModel(lane.id + " has no bounds; run layout first");
  }
  for (const SequenceFlow& flow : model.flows) {
    if (flow.waypoints.size() < 2) throw UnlaidModel(flow.id + " has no waypoints; run layout first");
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<bpmn:definitions xmlns:bpmn=\"http://www.omg.org/spec/BPMN/20100524/MODEL\""
      << " xmlns:bpmndi=\"http://www.omg.org/spec/BPMN/20100524/DI\""
      << " xmlns:dc=\"http://www.omg.org/spec/DD/20100524/DC\""
      << " xmlns:di=\"http://www.omg.org/spec/DD/20100524/DI\""
      << " xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\""
      << " xmlns:p2b=\"urn:proc2bpmn:extensions\""
      << " id=\"Definitions_1\" targetNamespace=\"http://bpmn.io/schema/bpmn\">\n";

  out << "  <bpmn:collaboration id=\"Collaboration_1\">\n"
      << "    <bpmn:participant id=\"Participant_1\" name=\"" << escape(model.pool_name) << "\" processRef=\""
      << model.process_id << "\" />\n"
      << "  </bpmn:collaboration>\n";

  out << "  <bpmn:process id=\"" << model.process_id << "\" isExecutable=\"false\">\n";
  if (!model.lanes.empty()) {
    out << "    <bpmn:laneSet id=\"LaneSet_1\">\n";
    for (const Lane& lane : model.lanes) {
      out << "      <bpmn:lane id=\"" << lane.id << "\" name=\"" << escape(lane.name) << "\">\n";
      for (const std::string& member : lane.members) {
        out << "        <bpmn:flowNodeRef>" << member << "</bpmn:flowNodeRef>\n";
      }
      out << "      </bpmn:lane>\n";
    }
    out << "    </bpmn:laneSet>\n";
  }

  for (const Node& node : model.nodes) {
    const std::string tag = element_name(node.kind);
    out << "    <" << tag << " id=\"" << node.id << "\"";
    if (!node.label.empty()) out << " name=\"" << escape(node.label) << "\"";
    if (node.kind == NodeKind::kExclusiveGateway) {
      out << " gatewayDirection=\"" << direction_name(node.direction) << "\"";
    }
    if (node.kind == NodeKind::kTask && node.verb_type == VerbType::kMessage) out << " p2b:verbType=\"message\"";
    out << ">\n";
    for (const SequenceFlow& flow : model.flows) {
      if (flow.target == node.id) out << "      <bpmn:incoming>" << flow.id << "</bpmn:incoming>\n";
    }
    for (const SequenceFlow& flow : model.flows) {
      if (flow.source == node.id) out << "      <bpmn:outgoing>" << flow.id << "</bpmn:outgoing>\n";
    }
    out << "    </" << tag << ">\n";
  }

  for (const SequenceFlow& flow : model.flows) {
    out << "    <bpmn:sequenceFlow id=\"" << flow.id << "\"";
    if (!flow.condition_label.empty()) out << " name=\"" << escape(flow.condition_label) << "\"";
    out << " sourceRef=\"" << flow.source << "\" targetRef=\"" << flow.target << "\"";
    if (flow.condition_label.empty()) {
      out << " />\n";
    } else {
      out << ">\n      <bpmn:conditionExpression xsi:type=\"bpmn:tFormalExpression\">"
          << escape(flow.condition_label, false) << "</bpmn:conditionExpression>\n    </bpmn:sequenceFlow>\n";
    }
  }
  out << "  </bpmn:process>\n";

  out << "  <bpmndi:BPMNDiagram id=\"BPMNDiagram_1\">\n"
      << "    <bpmndi:BPMNPlane id=\"BPMNPlane_1\" bpmnElement=\"Collaboration_1\">\n";
  out << "      <bpmndi:BPMNShape id=\"Participant_1_di\" bpmnElement=\"Participant_1\" isHorizontal=\"true\">\n";
  write_bounds(out, *model.pool_bounds);
  out << "      </bpmndi:BPMNShape>\n";
  for (const Lane& lane : model.lanes) {
    out << "      <bpmndi:BPMNShape id=\"" << lane.id << "_di\" bpmnElement=\"" << lane.id
        << "\" isHorizontal=\"true\">\n";
    write_bounds(out, *lane.bounds);
    out << "      </bpmndi:BPMNShape>\n";
  }
  for (const Node& node : model.nodes) {
    out << "      <bpmndi:BPMNShape id=\"" << node.id << "_di\" bpmnElement=\"" << node.id << "\">\n";
    write_bounds(out, *node.bounds);
    out << "      </bpmndi:BPMNShape>\n";
  }
  for (const SequenceFlow& flow : model.flows) {
    out << "      <bpmndi:BPMNEdge id=\"" << flow.id << "_di\" bpmnElement=\"" << flow.id << "\">\n";
    for (const Point& p : flow.waypoints) {
      out << "        <di:waypoint x=\"" << p.x << "\" y=\"" << p.y << "\" />\n";
    }
    out << "      </bpmndi:BPMNEdge>\n";
  }
  out << "    </bpmndi:BPMNPlane>\n"
      << "  </bpmndi:BPMNDiagram>\n"
      << "</bpmn:definitions>\n";
  return out.str();
}

}  // namespace proc2bpmn
