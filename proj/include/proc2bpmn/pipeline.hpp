#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/bpmn.hpp"
#include "proc2bpmn/coreference.hpp"
#include "proc2bpmn/extraction.hpp"
#include "proc2bpmn/lexicon.hpp"
#include "proc2bpmn/process_table.hpp"

namespace proc2bpmn {

/// Every intermediate of annotations -> table, kept for the debug reports.
struct Extraction {
  AnaphoraResult anaphora;
  AliasMap aliases;
  AnnotatedDocument resolved;  // pronouns and aliases substituted
  ParticipantRegistry registry;
  std::vector<SvoTriple> triples;
  std::vector<ConditionAttachment> conditions;
  std::optional<int> termination;
  ProcessTable table;
};

/// Coreference, then participants, SVO triples, conditions and termination,
/// then the process table.
Extraction extract_process(const AnnotatedDocument& doc, const Lexicon& lexicon);

/// build_model + layout + serialize_xml.
std::string compile_table(const ProcessTable& table, const Lexicon& lexicon, const std::string& pool_name);

}  // namespace proc2bpmn
