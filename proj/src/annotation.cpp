#include "proc2bpmn/annotation.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <utility>

namespace proc2bpmn {

std::string Violation::location() const {
  std::ostringstream out;
  if (sentence == 0) {
    out << "document";
  } else {
    out << "sentence " << sentence;
    if (token != 0) out << ", token " << token;
  }
  return out.str();
}

namespace {

void check_span(const AnnotatedDocument& doc, const Span& span, const std::string& what,
                std::vector<Violation>& out) {
  if (span.sentence < 1 || span.sentence > doc.sentence_count()) {
    out.push_back({0, 0, what + " refers to missing sentence " + std::to_string(span.sentence)});
    return;
  }
  const int length = static_cast<int>(doc.sentence(span.sentence).size());
  if (span.start < 1 || span.start >= span.end || span.end > length + 1) {
    std::ostringstream reason;
    reason << what << " [" << span.start << ", " << span.end << ") is outside 1.." << length + 1;
    out.push_back({span.sentence, 0, reason.str()});
  }
}

}  // namespace

std::vector<Violation> validate_document(const AnnotatedDocument& doc) {
  std::vector<Violation> out;
  if (doc.sentences.empty()) out.push_back({0, 0, "document has no sentences"});

  for (int s = 1; s <= doc.sentence_count(); ++s) {
    const Sentence& sentence = doc.sentence(s);
    const int length = static_cast<int>(sentence.size());
    if (length == 0) {
      out.push_back({s, 0, "sentence has no tokens"});
      continue;
    }
    int roots = 0;
    bool heads_in_range = true;
    for (int t = 1; t <= length; ++t) {
      const Token& token = sentence[static_cast<std::size_t>(t - 1)];
      if (token.index != t) {
        out.push_back({s, t, "index " + std::to_string(token.index) + " does not match position"});
      }
      if (token.deprel.empty()) out.push_back({s, t, "empty deprel"});
      if (token.head < 0 || token.head > length) {
        out.push_back({s, t, "head " + std::to_string(token.head) + " out of range 0.." + std::to_string(length)});
        heads_in_range = false;
      } else if (token.head == t) {
        out.push_back({s, t, "token is its own head"});
        heads_in_range = false;
      }
      if (token.head == 0) ++roots;
    }
    if (roots != 1) {
      out.push_back({s, 0, "expected exactly one root token, found " + std::to_string(roots)});
    } else if (heads_in_range) {
      // Every head chain must reach the root; anything else is a cycle.
      for (int t = 1; t <= length; ++t) {
        int cursor = t;
        int steps = 0;
        while (cursor != 0 && steps <= length) {
          cursor = sentence[static_cast<std::size_t>(cursor - 1)].head;
          ++steps;
        }
        if (cursor != 0) {
          out.push_back({s, t, "head chain does not reach the root"});
          break;
        }
      }
    }
  }

  for (const EntitySpan& entity : doc.entities) {
    check_span(doc, entity.span, "entity span", out);
    if (entity.label.empty()) out.push_back({entity.span.sentence, 0, "entity span has empty label"});
  }
  for (std::size_t c = 0; c < doc.chains.size(); ++c) {
    const CorefChain& chain = doc.chains[c];
    const std::string name = "chain " + std::to_string(c + 1);
    if (chain.mentions.size() < 2) out.push_back({0, 0, name + " has fewer than 2 mentions"});
    std::set<Span> seen;
    for (const Span& mention : chain.mentions) {
      check_span(doc, mention, name + " mention", out);
      if (!seen.insert(mention).second) out.push_back({mention.sentence, 0, name + " repeats a mention span"});
    }
  }
  return out;
}

std::vector<int> children_of(const Sentence& sentence, int head) {
  std::vector<int> out;
  for (const Token& token : sentence) {
    if (token.head == head && token.index != head) out.push_back(token.index);
  }
  return out;
}

int child_with(const Sentence& sentence, int head, std::initializer_list<std::string_view> deprels) {
  for (const Token& token : sentence) {
    if (token.head != head) continue;
    const std::string_view label = normalize_deprel(token.deprel);
    if (std::find(deprels.begin(), deprels.end(), label) != deprels.end()) return token.index;
  }
  return 0;
}

std::vector<int> subtree_of(const Sentence& sentence, int head) {
  std::vector<int> out{head};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int child : children_of(sentence, out[i])) out.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view normalize_deprel(std::string_view deprel) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kAliases{{
      {"obj", "dobj"},
      {"nsubj:pass", "nsubjpass"},
      {"compound:prt", "prt"},
      {"obl:agent", "agent"},
      {"ROOT", "root"},
      {"iobj", "dative"},
      {"advmod:neg", "neg"},
      {"nmod:poss", "poss"},
  }};
  for (const auto& [from, to] : kAliases) {
    if (deprel == from) return to;
  }
  return deprel;
}

std::string span_text(const Sentence& sentence, int start, int end) {
  std::string out;
  for (int t = start; t < end; ++t) {
    const std::string& form = sentence.at(static_cast<std::size_t>(t - 1)).form;
    if (form.empty()) continue;
    if (!out.empty()) out += ' ';
    out += form;
  }
  return out;
}

std::string sentence_text(const Sentence& sentence) {
  return span_text(sentence, 1, static_cast<int>(sentence.size()) + 1);
}

}  // namespace proc2bpmn
