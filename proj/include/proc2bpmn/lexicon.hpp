#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace proc2bpmn {

/// Dependency roles the extractor pattern-matches on.
enum class Descriptor {
  kSubject,
  kPassiveSubject,
  kObject,
  kAttribute,
  kPrepObject,
  kAgent,
  kClauseMarker,
  kAdverbialClause,
  kConjunct,
  kParticle,
  kRoot,
};

std::string_view label_of(Descriptor descriptor);
/// Exact inverse of label_of; also accepts the aliases known to
/// normalize_deprel ("obj", "nsubj:pass", ...).
std::optional<Descriptor> descriptor_for(std::string_view label);
const std::vector<Descriptor>& all_descriptors();

enum class VerbType { kMessage, kTermination, kGenericAction };
enum class KeywordType { kConditional, kAlternative, kSequence, kNone };

std::string_view to_string(VerbType type);
std::string_view to_string(KeywordType type);

/// Constants plus the flat-file synonym network.  Immutable once loaded.
///
/// Lexicon file format, one relation per line, tab-separated:
///
///     relation<TAB>lemma<TAB>lemma...
///
/// Relations: verb.message, verb.termination, keyword.conditional,
/// keyword.alternative, keyword.sequence, keyword.role, noun.process,
/// pattern.termination, synonym, hypernym, antonym.  Blank lines and lines
/// starting with '#' are ignored.
class Lexicon {
 public:
  /// The shipped default lexicon (data/default.lexicon, compiled in).
  static const Lexicon& builtin();
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);

  VerbType classify_verb(std::string_view lemma) const;
  /// Longest-match classification: "in case of" resolves to "in case".
  KeywordType classify_keyword(std::string_view word_or_phrase) const;

  std::set<std::string> synonyms_of(std::string_view lemma) const;
  std::set<std::string> hypernyms_of(std::string_view lemma) const;
  bool are_synonyms(std::string_view a, std::string_view b) const;

  /// First listed antonym, if any.
  std::optional<std::string> antonym_of(std::string_view lemma) const;

  /// Head nouns that denote roles/people ("manager", "clerk", ...).
  bool is_role_noun(std::string_view lemma) const;
  /// Head nouns that denote the process itself ("process", "request", ...).
  bool is_process_noun(std::string_view lemma) const;
  /// Lemma sequences that close the process ("process end").
  const std::set<std::vector<std::string>>& termination_patterns() const { return termination_patterns_; }

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  std::set<std::string> message_verbs_;
  std::set<std::string> termination_verbs_;
  std::map<KeywordType, std::set<std::string>> keywords_;
  std::set<std::string> role_nouns_;
  std::set<std::string> process_nouns_;
  std::set<std::vector<std::string>> termination_patterns_;
  std::map<std::string, std::set<std::string>> synonyms_;
  std::map<std::string, std::set<std::string>> hypernyms_;
  std::map<std::string, std::vector<std::string>> antonyms_;
};

/// The compiled-in text of data/default.lexicon.
std::string_view default_lexicon_text();

/// ASCII lower-casing used for every lexicon lookup.
std::string to_lower(std::string_view text);

}  // namespace proc2bpmn
