#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "proc2bpmn/coreference.hpp"

namespace proc2bpmn {

namespace {

bool is_phrase_modifier(std::string_view deprel) {
  static constexpr std::array<std::string_view, 8> kModifiers{"det",  "predet", "compound", "nn",
                                                              "amod", "nummod", "poss",     "flat"};
  const std::string_view label = normalize_deprel(deprel);
  if (std::find(kModifiers.begin(), kModifiers.end(), label) != kModifiers.end()) return true;
  return label.starts_with("flat") || label.starts_with("compound:");
}

bool is_nominal_pos(std::string_view upos) { return upos == "NOUN" || upos == "PROPN" || upos == "PRON"; }

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string word; in >> word;) words.push_back(word);
  return words;
}

std::string last_word(std::string_view text) {
  const std::vector<std::string> words = words_of(text);
  return words.empty() ? std::string{} : words.back();
}

}  // namespace

std::string_view to_string(MentionKind kind) {
  switch (kind) {
    case MentionKind::kPronoun: return "pronoun";
    case MentionKind::kNominal: return "nominal";
    case MentionKind::kProper: return "proper";
  }
  return "nominal";
}

bool is_determiner(std::string_view word) {
  static constexpr std::array<std::string_view, 7> kDeterminers{"the", "a", "an", "this", "that", "these", "those"};
  const std::string lower = to_lower(word);
  return std::find(kDeterminers.begin(), kDeterminers.end(), lower) != kDeterminers.end();
}

std::string strip_determiners(std::string_view surface) {
  std::vector<std::string> words = words_of(surface);
  auto first = std::find_if_not(words.begin(), words.end(), [](const std::string& w) { return is_determiner(w); });
  std::string out;
  for (auto it = first; it != words.end(); ++it) {
    if (!out.empty()) out += ' ';
    out += *it;
  }
  return out;
}

std::string normalize_surface(std::string_view surface) {
  std::string stripped = strip_determiners(to_lower(surface));
  while (!stripped.empty() && std::ispunct(static_cast<unsigned char>(stripped.back()))) stripped.pop_back();
  while (!stripped.empty() && stripped.back() == ' ') stripped.pop_back();
  // A trailing punctuation token may have left a dangling space-separated word.
  return strip_determiners(stripped);
}

std::string title_case(std::string_view text) {
  std::string out(text);
  bool word_start = true;
  for (char& c : out) {
    if (c == ' ') {
      word_start = true;
    } else {
      if (word_start) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      word_start = false;
    }
  }
  return out;
}

Span noun_phrase_span(const AnnotatedDocument& doc, int sentence, int head) {
  const Sentence& tokens = doc.sentence(sentence);
  std::vector<int> members{head};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int child : children_of(tokens, members[i])) {
      if (is_phrase_modifier(tokens[static_cast<std::size_t>(child - 1)].deprel)) members.push_back(child);
    }
  }
  const auto [lo, hi] = std::minmax_element(members.begin(), members.end());
  return {sentence, *lo, *hi + 1};
}

Mention mention_at(const AnnotatedDocument& doc, int sentence, int head) {
  const Sentence& tokens = doc.sentence(sentence);
  const Token& head_token = tokens.at(static_cast<std::size_t>(head - 1));
  Mention mention;
  mention.span = noun_phrase_span(doc, sentence, head);
  mention.head = head;
  mention.surface = span_text(tokens, mention.span.start, mention.span.end);
  mention.head_lemma = to_lower(last_word(head_token.lemma.empty() ? head_token.form : head_token.lemma));
  if (head_token.upos == "PRON" && mention.span.end - mention.span.start == 1) {
    mention.kind = MentionKind::kPronoun;
  } else if (head_token.upos == "PROPN") {
    mention.kind = MentionKind::kProper;
  } else {
    mention.kind = MentionKind::kNominal;
  }
  for (const EntitySpan& entity : doc.entities) {
    if (entity.span.sentence == sentence && entity.span.start <= head && head < entity.span.end) {
      mention.entity_label = entity.label;
      break;
    }
  }
  return mention;
}

Mention mention_for_span(const AnnotatedDocument& doc, const Span& span) {
  const Sentence& tokens = doc.sentence(span.sentence);
  int head = span.end - 1;
  for (int t = span.start; t < span.end; ++t) {
    const int governor = tokens.at(static_cast<std::size_t>(t - 1)).head;
    if (governor < span.start || governor >= span.end) {
      head = t;
      break;
    }
  }
  Mention mention = mention_at(doc, span.sentence, head);
  mention.span = span;
  mention.surface = span_text(tokens, span.start, span.end);
  if (span.end - span.start != 1 && mention.kind == MentionKind::kPronoun) mention.kind = MentionKind::kNominal;
  return mention;
}

std::vector<Mention> collect_mentions(const AnnotatedDocument& doc) {
  std::vector<Mention> out;
  for (int s = 1; s <= doc.sentence_count(); ++s) {
    for (const Token& token : doc.sentence(s)) {
      if (!is_nominal_pos(token.upos) || token.form.empty()) continue;
      if (is_phrase_modifier(token.deprel)) continue;
      out.push_back(mention_at(doc, s, token.index));
    }
  }
  return out;
}

}  // namespace proc2bpmn
