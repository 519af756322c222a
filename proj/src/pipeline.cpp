#include "proc2bpmn/pipeline.hpp"

namespace proc2bpmn {

Extraction extract_process(const AnnotatedDocument& doc, const Lexicon& lexicon) {
  Extraction out;
  out.anaphora = resolve_anaphora(doc, lexicon);
  out.aliases = detect_aliases(alias_candidates(out.anaphora.document, lexicon), lexicon);
  out.resolved = apply_substitutions(out.anaphora.document, out.anaphora.resolutions, out.aliases);
  out.registry = extract_participants(out.resolved, out.aliases, lexicon);
  out.triples = extract_svo(out.resolved, out.registry, lexicon);
  out.conditions = extract_conditions(out.resolved, out.triples, lexicon);
  out.termination = detect_termination(out.resolved, out.triples, lexicon);
  out.table = build_table(out.triples, out.conditions, out.termination, out.registry);
  return out;
}

std::string compile_table(const ProcessTable& table, const Lexicon& lexicon, const std::string& pool_name) {
  return serialize_xml(layout(build_model(table, lexicon, pool_name)));
}

}  // namespace proc2bpmn
