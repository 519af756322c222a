#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/bpmn.hpp"
#include "proc2bpmn/coreference.hpp"
#include "proc2bpmn/process_table.hpp"

namespace testing_support {

std::string fixture(const std::string& name);
std::string read_file(const std::string& path);

/// Builds a document from lines of "form lemma UPOS head deprel|..." (one
/// line per sentence).  `entities` are (sentence, start, end, label).
proc2bpmn::AnnotatedDocument compact_doc(const std::string& text,
                                         const std::vector<proc2bpmn::EntitySpan>& entities = {});

/// The hand-built coreference cases, one document per case.
std::vector<proc2bpmn::AnnotatedDocument> coref_cases();

struct CorefExpectation {
  std::string case_id;
  int sentence = 0;  // pronoun position
  int token = 0;
  proc2bpmn::Span antecedent;
  std::string antecedent_surface;
};
std::vector<CorefExpectation> coref_oracle();

struct AliasExpectation {
  proc2bpmn::Mention mention;
  std::string oracle_class;
  std::string canonical;
};
std::vector<AliasExpectation> alias_oracle();

/// A random table satisfying every ProcessTable invariant: plain rows,
/// 2-3 way branches with multi-step chains, skip branches, in-branch "end"
/// markers, empty Who cells, and cells that need CSV quoting.
proc2bpmn::ProcessTable random_table(std::mt19937& rng);

/// What the test-only structural reader recovers from emitted BPMN XML.
struct ParsedBpmn {
  std::string pool_name;
  std::map<std::string, int> element_counts;  // "task", "sequenceFlow", ...
  std::map<std::string, std::pair<std::string, std::string>> nodes;  // id -> (kind, name)
  struct Flow {
    std::string source, target, condition;
    bool operator==(const Flow&) const = default;
    auto operator<=>(const Flow&) const = default;
  };
  std::map<std::string, Flow> flows;
  std::vector<std::pair<std::string, std::vector<std::string>>> lanes;  // name, flowNodeRefs
  std::map<std::string, proc2bpmn::Bounds> shapes;                      // bpmnElement -> bounds
  std::map<std::string, std::vector<proc2bpmn::Point>> edges;           // bpmnElement -> waypoints
};

ParsedBpmn read_bpmn(const std::string& xml);

/// Empty when `parsed` is the same graph as `model` (nodes, kinds, labels,
/// flows, conditions, lanes, geometry); otherwise the first difference.
std::string graph_difference(const proc2bpmn::BpmnModel& model, const ParsedBpmn& parsed);

/// Runs a shell command, returning its exit status.
int run(const std::string& command);

}  // namespace testing_support
