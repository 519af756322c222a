#pragma once

#include <compare>
#include <initializer_list>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace proc2bpmn {

/// One token of a dependency-parsed sentence.  Indices are 1-based and
/// `head == 0` marks the sentence root.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;
  std::string deprel;
  /// Surface form before coreference/alias substitution, if one happened.
  std::optional<std::string> original_form;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

/// Half-open token range [start, end) inside a 1-based sentence.
struct Span {
  int sentence = 0;
  int start = 0;
  int end = 0;

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct EntitySpan {
  Span span;
  std::string label;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct CorefChain {
  std::vector<Span> mentions;

  friend bool operator==(const CorefChain&, const CorefChain&) = default;
};

struct AnnotatedDocument {
  std::string source_id;
  std::vector<Sentence> sentences;
  std::vector<EntitySpan> entities;
  std::vector<CorefChain> chains;

  /// 1-based accessors.
  const Sentence& sentence(int number) const { return sentences.at(static_cast<std::size_t>(number - 1)); }
  Sentence& sentence(int number) { return sentences.at(static_cast<std::size_t>(number - 1)); }
  const Token& token(int sentence_number, int token_index) const {
    return sentence(sentence_number).at(static_cast<std::size_t>(token_index - 1));
  }
  Token& token(int sentence_number, int token_index) {
    return sentence(sentence_number).at(static_cast<std::size_t>(token_index - 1));
  }
  int sentence_count() const { return static_cast<int>(sentences.size()); }

  friend bool operator==(const AnnotatedDocument&, const AnnotatedDocument&) = default;
};

struct Violation {
  int sentence = 0;  // 0 when the violation is document-level
  int token = 0;     // 0 when not tied to a token
  std::string reason;

  std::string location() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks every structural invariant of the data model.  Returns an empty
/// list iff the document is valid.
std::vector<Violation> validate_document(const AnnotatedDocument& doc);

/// Interchange JSON: {source_id, sentences:[[token...]...], entities, chains}.
/// Throws MalformedInput or SchemaViolation.
AnnotatedDocument parse_annotation_json(std::string_view bytes);
std::string serialize_annotation_json(const AnnotatedDocument& doc);

/// CoNLL-U subset: 10 tab-separated columns, blank line between sentences,
/// `#` comments skipped (except `# newdoc id = ...`, which sets source_id).
/// Multiword ranges ("1-2") and empty nodes ("1.1") are ignored.
AnnotatedDocument parse_conllu(std::string_view bytes);
std::string serialize_conllu(const AnnotatedDocument& doc);

// Tree helpers shared by the downstream modules.

/// Indices of the direct dependents of `head` in `sentence`, ascending.
std::vector<int> children_of(const Sentence& sentence, int head);
/// First dependent of `head` with one of the given relations, or 0.
int child_with(const Sentence& sentence, int head, std::initializer_list<std::string_view> deprels);
/// `head` and all its transitive dependents, ascending.
std::vector<int> subtree_of(const Sentence& sentence, int head);

/// Maps dependency labels from other inventories onto the one the extractor
/// consumes (e.g. UD "obj" -> "dobj", "nsubj:pass" -> "nsubjpass").
std::string_view normalize_deprel(std::string_view deprel);

/// Space-joined forms of tokens `[start, end)`, skipping empty forms.
std::string span_text(const Sentence& sentence, int start, int end);
std::string sentence_text(const Sentence& sentence);

}  // namespace proc2bpmn
