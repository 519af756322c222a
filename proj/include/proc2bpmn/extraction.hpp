#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/coreference.hpp"
#include "proc2bpmn/lexicon.hpp"

namespace proc2bpmn {

enum class ParticipantKind { kPerson, kOrg, kRole, kSystem };

std::string_view to_string(ParticipantKind kind);

struct Participant {
  std::string canonical_name;
  std::set<std::string> aliases;  // normalized surfaces, canonical included
  ParticipantKind kind = ParticipantKind::kRole;
  Span first_mention;

  friend bool operator==(const Participant&, const Participant&) = default;
};

class ParticipantRegistry {
 public:
  ParticipantRegistry() = default;
  explicit ParticipantRegistry(std::vector<Participant> participants) : participants_(std::move(participants)) {}

  const std::vector<Participant>& participants() const { return participants_; }
  std::size_t size() const { return participants_.size(); }
  bool empty() const { return participants_.empty(); }

  /// Participant whose alias set holds the normalized `surface`.
  const Participant* find(std::string_view surface) const;
  const Participant* by_name(std::string_view canonical_name) const;

  friend bool operator==(const ParticipantRegistry&, const ParticipantRegistry&) = default;

 private:
  std::vector<Participant> participants_;
};

struct SvoTriple {
  std::optional<std::string> subject;  // canonical participant name; nullopt = UNKNOWN
  std::string subject_phrase;          // syntactic subject text, empty when inherited
  std::string verb_lemma;              // particles folded in: "send out"
  VerbType verb_type = VerbType::kGenericAction;
  std::string object_phrase;
  int sentence = 0;
  int verb_index = 0;
  bool negated = false;

  friend bool operator==(const SvoTriple&, const SvoTriple&) = default;
};

struct ConditionAttachment {
  std::string condition_text;
  /// Text of the opposite outcome: the sibling's condition for an
  /// alternative, the synthesized negation for a conditional.
  std::string complement_text;
  /// Indices into the triple list; the clause's main verb first, then its
  /// conjuncts.
  std::vector<std::size_t> governed;
  /// Index into the attachment list of the linked opposite branch.
  std::optional<std::size_t> polarity_sibling;
  bool alternative = false;
  int sentence = 0;

  friend bool operator==(const ConditionAttachment&, const ConditionAttachment&) = default;
};

/// One participant per alias class mentioned in subject/agent position or
/// labeled PERSON/ORG/ROLE/SYSTEM; ordered by first mention.  Throws
/// NoParticipants when nothing qualifies.
ParticipantRegistry extract_participants(const AnnotatedDocument& doc, const AliasMap& alias_map,
                                         const Lexicon& lexicon);

/// One triple per action verb (sentence roots and their verb conjuncts),
/// ordered by (sentence, verb index).
std::vector<SvoTriple> extract_svo(const AnnotatedDocument& doc, const ParticipantRegistry& registry,
                                   const Lexicon& lexicon);

/// Conditional adverbial clauses and "otherwise"-style alternatives.  Throws
/// DanglingAlternative for an alternative with no open conditional in the same
/// or previous sentence.
std::vector<ConditionAttachment> extract_conditions(const AnnotatedDocument& doc, const std::vector<SvoTriple>& triples,
                                                    const Lexicon& lexicon);

/// 1-based index of the first sentence that ends the process, if any.
std::optional<int> detect_termination(const AnnotatedDocument& doc, const std::vector<SvoTriple>& triples,
                                      const Lexicon& lexicon);

/// Swaps the verb for its lexicon antonym ("rejects" -> "approves"), else
/// prefixes "not ".
std::string complement_condition(const std::vector<std::string>& words, std::size_t verb_word, std::string_view verb_lemma,
                                 const Lexicon& lexicon);

std::string extraction_report(const ParticipantRegistry& registry, const std::vector<SvoTriple>& triples,
                              const std::vector<ConditionAttachment>& conditions, std::optional<int> termination);

}  // namespace proc2bpmn
