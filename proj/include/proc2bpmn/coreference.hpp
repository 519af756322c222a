#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/lexicon.hpp"

namespace proc2bpmn {

enum class MentionKind { kPronoun, kNominal, kProper };

std::string_view to_string(MentionKind kind);

/// A noun phrase occurrence.  `head` is the token index of the syntactic head
/// inside `span.sentence`.
struct Mention {
  Span span;
  int head = 0;
  std::string surface;
  std::string head_lemma;
  MentionKind kind = MentionKind::kNominal;
  std::string entity_label;  // empty when no entity span covers the head

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct Resolution {
  Mention pronoun;
  Mention antecedent;
  std::string rule;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct UnresolvedPronoun {
  Mention pronoun;
  std::string reason;
};

struct AnaphoraResult {
  AnnotatedDocument document;
  std::vector<Resolution> resolutions;
  std::vector<UnresolvedPronoun> unresolved;
};

/// Equivalence classes over normalized mention surfaces.
class AliasMap {
 public:
  struct AliasClass {
    std::string canonical;
    std::set<std::string> members;  // normalized surfaces
    bool has_proper = false;

    friend bool operator==(const AliasClass&, const AliasClass&) = default;
  };

  AliasMap() = default;
  explicit AliasMap(std::vector<AliasClass> classes);

  /// Classes ordered by canonical name.
  const std::vector<AliasClass>& classes() const { return classes_; }
  /// Looks up any surface (normalized internally); nullptr when unknown.
  const AliasClass* class_of(std::string_view surface) const;
  std::optional<std::string> canonical_of(std::string_view surface) const;
  bool empty() const { return classes_.empty(); }

  friend bool operator==(const AliasMap&, const AliasMap&) = default;

 private:
  std::vector<AliasClass> classes_;
  std::map<std::string, std::size_t> index_;
};

// Mention utilities.

/// Token range covered by the noun phrase headed by `head`.
Span noun_phrase_span(const AnnotatedDocument& doc, int sentence, int head);
Mention mention_at(const AnnotatedDocument& doc, int sentence, int head);
/// Mention whose span is exactly `span`; the head is the token whose own head
/// lies outside the span.
Mention mention_for_span(const AnnotatedDocument& doc, const Span& span);
/// Every noun-phrase head in document order.
std::vector<Mention> collect_mentions(const AnnotatedDocument& doc);

enum class SyntacticRole { kSubject, kObject, kOther };

/// Subject covers nsubj and passive agents ("by the director"); object covers
/// dobj, nsubjpass, dative, attr and other prepositional objects.
SyntacticRole syntactic_role(const AnnotatedDocument& doc, const Mention& mention);

/// Case-fold, strip leading determiners and trailing punctuation, collapse
/// whitespace.
std::string normalize_surface(std::string_view surface);
/// "affairs director" -> "Affairs Director".
std::string title_case(std::string_view text);
/// Surface with leading determiner words removed, original casing kept.
std::string strip_determiners(std::string_view surface);
bool is_determiner(std::string_view word);

/// Third-person pronouns in subject/object/agent position are resolved from
/// the document's coreference chains when they cover the pronoun, otherwise
/// by salience over the current and two preceding sentences.  The returned
/// document has every resolved pronoun substituted.
AnaphoraResult resolve_anaphora(const AnnotatedDocument& doc, const Lexicon& lexicon,
                                const std::vector<std::string>& registry_hint = {});

/// Pairwise merge rules closed transitively.  Pronoun mentions are ignored.
AliasMap detect_aliases(const std::vector<Mention>& mentions, const Lexicon& lexicon);

/// Mentions that may name a participant: non-pronouns whose head is not a
/// process noun, unless an entity span labels them.
std::vector<Mention> alias_candidates(const AnnotatedDocument& doc, const Lexicon& lexicon);

/// Rewrites resolved pronouns and alias surfaces to canonical names.
/// Idempotent; throws StaleResolution when a resolution no longer matches.
AnnotatedDocument apply_substitutions(const AnnotatedDocument& doc, const std::vector<Resolution>& resolutions,
                                      const AliasMap& alias_map);

/// Human-readable report behind --debug-coref.
std::string coreference_report(const AnaphoraResult& result, const AliasMap& alias_map);

}  // namespace proc2bpmn
