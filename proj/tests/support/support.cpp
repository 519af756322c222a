#include "support.hpp"

#include <sys/wait.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cctype>
#include <cstdlib>
#include <json.hpp>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testing_support {

using namespace proc2bpmn;
namespace pt = boost::property_tree;

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

namespace {

std::vector<std::vector<std::string>> tsv_rows(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, '\t');) fields.push_back(cell);
    rows.push_back(fields);
  }
  return rows;
}

// "2:6" or "1:4-6"
std::vector<int> numbers(const std::string& text) {
  std::vector<int> out;
  std::string digits;
  for (char c : text + ":") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (!digits.empty()) {
      out.push_back(std::stoi(digits));
      digits.clear();
    }
  }
  return out;
}

}  // namespace

AnnotatedDocument compact_doc(const std::string& text, const std::vector<EntitySpan>& entities) {
  AnnotatedDocument doc;
  doc.source_id = "compact";
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.find_first_not_of(' ') == std::string::npos) continue;
    Sentence sentence;
    std::istringstream tokens(line);
    for (std::string spec; std::getline(tokens, spec, '|');) {
      std::istringstream fields(spec);
      Token token;
      token.index = static_cast<int>(sentence.size()) + 1;
      fields >> token.form >> token.lemma >> token.upos >> token.head >> token.deprel;
      sentence.push_back(token);
    }
    doc.sentences.push_back(sentence);
  }
  doc.entities = entities;
  const auto violations = validate_document(doc);
  if (!violations.empty()) throw std::invalid_argument("compact_doc: " + violations.front().reason);
  return doc;
}

std::vector<AnnotatedDocument> coref_cases() {
  std::vector<AnnotatedDocument> out;
  for (const auto& doc : nlohmann::json::parse(read_file(fixture("coref/cases.json")))) {
    out.push_back(parse_annotation_json(doc.dump()));
  }
  return out;
}

std::vector<CorefExpectation> coref_oracle() {
  std::vector<CorefExpectation> out;
  for (const auto& row : tsv_rows(fixture("coref/oracle.tsv"))) {
    const std::vector<int> pronoun = numbers(row.at(1));
    const std::vector<int> antecedent = numbers(row.at(2));
    out.push_back({row.at(0), pronoun.at(0), pronoun.at(1), Span{antecedent.at(0), antecedent.at(1), antecedent.at(2)},
                   row.at(3)});
  }
  return out;
}

std::vector<AliasExpectation> alias_oracle() {
  std::vector<AliasExpectation> out;
  int n = 0;
  for (const auto& row : tsv_rows(fixture("aliases.tsv"))) {
    Mention m;
    m.span = Span{++n, 1, 2};
    m.head = 1;
    m.surface = row.at(0);
    m.head_lemma = row.at(1);
    m.kind = row.at(2) == "PROPER" ? MentionKind::kProper : MentionKind::kNominal;
    out.push_back({m, row.at(3), row.at(4)});
  }
  return out;
}

namespace {

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_activity(std::mt19937& rng) {
  static const std::vector<std::string> verbs{"Send", "Review", "Approve", "Archive", "Check", "Notify", "Close"};
  static const std::vector<std::string> objects{"Invoice", "Request", "Status", "Report, Draft", "\"Final\" Memo",
                                                "Order Form", "Record"};
  return pick(rng, verbs) + " " + pick(rng, objects);
}

std::string random_condition(std::mt19937& rng) {
  static const std::vector<std::string> conditions{"manager approves", "budget exceeds limit", "clerk rejects form",
                                                   "order, if urgent", "customer says \"no\"", "otherwise",
                                                   "line one\nline two"};
  return pick(rng, conditions);
}

std::string random_who(std::mt19937& rng) {
  static const std::vector<std::string> who{"Clerk", "Manager", "Affairs Director", "Secretary, Senior", "", "Auditor"};
  return pick(rng, who);
}

}  // namespace

ProcessTable random_table(std::mt19937& rng) {
  ProcessTable table;
  table.rows.push_back({parse_order_label("0"), std::string(kStartActivity), "", "", false});

  const int segments = std::uniform_int_distribution<int>(1, 6)(rng);
  unsigned seq = 0;
  bool has_activity = false;
  for (int s = 0; s < segments; ++s) {
    ++seq;
    if (!chance(rng, 0.35)) {
      table.rows.push_back({OrderLabel{seq, std::nullopt, std::nullopt}, random_activity(rng), "", random_who(rng), false});
      has_activity = true;
      continue;
    }
    const int branch_count = std::uniform_int_distribution<int>(2, 3)(rng);
    const int rejoining = std::uniform_int_distribution<int>(0, branch_count - 1)(rng);
    for (int b = 0; b < branch_count; ++b) {
      const char letter = static_cast<char>('a' + b);
      const std::string condition = random_condition(rng);
      if (b != rejoining && chance(rng, 0.25)) {
        table.rows.push_back({OrderLabel{seq, letter, 1u}, "", condition, "", false});
        continue;
      }
      const unsigned steps = std::uniform_int_distribution<unsigned>(1, 3)(rng);
      for (unsigned k = 1; k <= steps; ++k) {
        table.rows.push_back({OrderLabel{seq, letter, k}, random_activity(rng), k == 1 ? condition : "",
                              random_who(rng), false});
        has_activity = true;
      }
      if (b != rejoining && chance(rng, 0.3)) {
        table.rows.push_back({OrderLabel{seq, letter, steps + 1}, std::string(kBranchEndMarker), "", "", false});
      }
    }
  }
  if (!has_activity) {
    table.rows.push_back({OrderLabel{++seq, std::nullopt, std::nullopt}, random_activity(rng), "", "Clerk", false});
  }
  if (chance(rng, 0.85)) table.rows.push_back({OrderLabel{++seq, std::nullopt, std::nullopt}, "", "", "", true});
  return table;
}

namespace {

Bounds read_bounds(const pt::ptree& shape) {
  const pt::ptree& b = shape.get_child("dc:Bounds.<xmlattr>");
  return {b.get<int>("x"), b.get<int>("y"), b.get<int>("width"), b.get<int>("height")};
}

}  // namespace

ParsedBpmn read_bpmn(const std::string& xml) {
  pt::ptree tree;
  std::istringstream in(xml);
  pt::read_xml(in, tree);
  const pt::ptree& definitions = tree.get_child("bpmn:definitions");

  ParsedBpmn out;
  for (const auto& [tag, child] : definitions.get_child("bpmn:collaboration")) {
    if (tag == "bpmn:participant") out.pool_name = child.get<std::string>("<xmlattr>.name", "");
  }

  for (const auto& [tag, child] : definitions.get_child("bpmn:process")) {
    if (tag == "<xmlattr>") continue;
    const std::string kind = tag.substr(tag.find(':') + 1);
    ++out.element_counts[kind];
    if (kind == "laneSet") {
      for (const auto& [lane_tag, lane] : child) {
        if (lane_tag != "bpmn:lane") continue;
        ++out.element_counts["lane"];
        std::vector<std::string> refs;
        for (const auto& [ref_tag, ref] : lane) {
          if (ref_tag == "bpmn:flowNodeRef") refs.push_back(ref.data());
        }
        out.lanes.emplace_back(lane.get<std::string>("<xmlattr>.name", ""), refs);
      }
    } else if (kind == "sequenceFlow") {
      const std::string condition = child.get<std::string>("bpmn:conditionExpression", "");
      if (!condition.empty()) ++out.element_counts["conditionExpression"];
      out.flows[child.get<std::string>("<xmlattr>.id")] = {child.get<std::string>("<xmlattr>.sourceRef"),
                                                          child.get<std::string>("<xmlattr>.targetRef"), condition};
    } else {
      out.nodes[child.get<std::string>("<xmlattr>.id")] = {kind, child.get<std::string>("<xmlattr>.name", "")};
    }
  }

  const pt::ptree& plane = definitions.get_child("bpmndi:BPMNDiagram.bpmndi:BPMNPlane");
  for (const auto& [tag, child] : plane) {
    if (tag == "bpmndi:BPMNShape") {
      ++out.element_counts["BPMNShape"];
      out.shapes[child.get<std::string>("<xmlattr>.bpmnElement")] = read_bounds(child);
    } else if (tag == "bpmndi:BPMNEdge") {
      ++out.element_counts["BPMNEdge"];
      auto& points = out.edges[child.get<std::string>("<xmlattr>.bpmnElement")];
      for (const auto& [wp_tag, wp] : child) {
        if (wp_tag == "di:waypoint") points.push_back({wp.get<int>("<xmlattr>.x"), wp.get<int>("<xmlattr>.y")});
      }
    }
  }
  return out;
}

std::string graph_difference(const BpmnModel& model, const ParsedBpmn& parsed) {
  static const std::map<NodeKind, std::string> kTag{{NodeKind::kStartEvent, "startEvent"},
                                                    {NodeKind::kEndEvent, "endEvent"},
                                                    {NodeKind::kTask, "task"},
                                                    {NodeKind::kExclusiveGateway, "exclusiveGateway"}};
  if (parsed.pool_name != model.pool_name) return "pool name differs";
  if (parsed.nodes.size() != model.nodes.size()) return "node count differs";
  for (const Node& node : model.nodes) {
    auto it = parsed.nodes.find(node.id);
    if (it == parsed.nodes.end()) return "missing node " + node.id;
    if (it->second.first != kTag.at(node.kind)) return "kind differs for " + node.id;
    if (it->second.second != node.label) return "label differs for " + node.id;
    auto shape = parsed.shapes.find(node.id);
    if (shape == parsed.shapes.end() || !node.bounds || shape->second != *node.bounds) return "bounds differ for " + node.id;
  }
  if (parsed.flows.size() != model.flows.size()) return "flow count differs";
  for (const SequenceFlow& flow : model.flows) {
    auto it = parsed.flows.find(flow.id);
    if (it == parsed.flows.end()) return "missing flow " + flow.id;
    if (it->second != ParsedBpmn::Flow{flow.source, flow.target, flow.condition_label}) return "flow differs: " + flow.id;
    auto edge = parsed.edges.find(flow.id);
    if (edge == parsed.edges.end() || edge->second != flow.waypoints) return "waypoints differ for " + flow.id;
  }
  if (parsed.lanes.size() != model.lanes.size()) return "lane count differs";
  for (std::size_t i = 0; i < model.lanes.size(); ++i) {
    if (parsed.lanes[i].first != model.lanes[i].name || parsed.lanes[i].second != model.lanes[i].members) {
      return "lane differs: " + model.lanes[i].id;
    }
  }
  return {};
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

}  // namespace testing_support
