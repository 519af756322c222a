#include "proc2bpmn/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

namespace {

constexpr std::array<std::pair<Descriptor, std::string_view>, 11> kDescriptorLabels{{
    {Descriptor::kSubject, "nsubj"},
    {Descriptor::kPassiveSubject, "nsubjpass"},
    {Descriptor::kObject, "dobj"},
    {Descriptor::kAttribute, "attr"},
    {Descriptor::kPrepObject, "pobj"},
    {Descriptor::kAgent, "agent"},
    {Descriptor::kClauseMarker, "mark"},
    {Descriptor::kAdverbialClause, "advcl"},
    {Descriptor::kConjunct, "conj"},
    {Descriptor::kParticle, "prt"},
    {Descriptor::kRoot, "root"},
}};

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string word; in >> word;) words.push_back(to_lower(word));
  return words;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& word : words) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c); });
  return out;
}

std::string_view label_of(Descriptor descriptor) {
  for (const auto& [d, label] : kDescriptorLabels) {
    if (d == descriptor) return label;
  }
  return {};
}

std::optional<Descriptor> descriptor_for(std::string_view label) {
  for (const auto& [d, known] : kDescriptorLabels) {
    if (known == label) return d;
  }
  if (label == "obj") return Descriptor::kObject;
  if (label == "nsubj:pass") return Descriptor::kPassiveSubject;
  if (label == "compound:prt") return Descriptor::kParticle;
  if (label == "obl:agent") return Descriptor::kAgent;
  if (label == "ROOT") return Descriptor::kRoot;
  return std::nullopt;
}

const std::vector<Descriptor>& all_descriptors() {
  static const std::vector<Descriptor> all = [] {
    std::vector<Descriptor> out;
    for (const auto& entry : kDescriptorLabels) out.push_back(entry.first);
    return out;
  }();
  return all;
}

std::string_view to_string(VerbType type) {
  switch (type) {
    case VerbType::kMessage: return "message";
    case VerbType::kTermination: return "termination";
    case VerbType::kGenericAction: return "generic";
  }
  return "generic";
}

std::string_view to_string(KeywordType type) {
  switch (type) {
    case KeywordType::kConditional: return "conditional";
    case KeywordType::kAlternative: return "alternative";
    case KeywordType::kSequence: return "sequence";
    case KeywordType::kNone: return "none";
  }
  return "none";
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lexicon = Lexicon::parse(default_lexicon_text());
  return lexicon;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedLexicon("cannot open lexicon file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  int line_number = 0;

  for (std::string line; std::getline(in, line);) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
      const std::size_t tab = line.find('\t', begin);
      std::string field = join_words(split_words(line.substr(begin, tab - begin)));
      if (!field.empty()) fields.push_back(std::move(field));
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
    const std::string where = "lexicon line " + std::to_string(line_number);
    if (fields.size() < 2) throw MalformedLexicon(where + ": expected relation and at least one lemma");

    const std::string relation = fields.front();
    const std::vector<std::string> lemmas(fields.begin() + 1, fields.end());

    auto add_to = [&](std::set<std::string>& target) {
      for (const std::string& lemma : lemmas) target.insert(lemma);
    };

    if (relation == "verb.message") {
      add_to(lex.message_verbs_);
    } else if (relation == "verb.termination") {
      add_to(lex.termination_verbs_);
    } else if (relation == "keyword.conditional") {
      add_to(lex.keywords_[KeywordType::kConditional]);
    } else if (relation == "keyword.alternative") {
      add_to(lex.keywords_[KeywordType::kAlternative]);
    } else if (relation == "keyword.sequence") {
      add_to(lex.keywords_[KeywordType::kSequence]);
    } else if (relation == "keyword.role") {
      add_to(lex.role_nouns_);
    } else if (relation == "noun.process") {
      add_to(lex.process_nouns_);
    } else if (relation == "pattern.termination") {
      for (const std::string& pattern : lemmas) lex.termination_patterns_.insert(split_words(pattern));
    } else if (relation == "synonym") {
      if (lemmas.size() < 2) throw MalformedLexicon(where + ": synonym needs at least two lemmas");
      for (const std::string& a : lemmas) {
        for (const std::string& b : lemmas) {
          if (&a == &b) continue;
          if (a == b) throw MalformedLexicon(where + ": '" + a + "' listed as its own synonym");
          lex.synonyms_[a].insert(b);
        }
      }
    } else if (relation == "hypernym") {
      if (lemmas.size() < 2) throw MalformedLexicon(where + ": hypernym needs a lemma and a hypernym");
      for (std::size_t i = 1; i < lemmas.size(); ++i) {
        if (lemmas[i] == lemmas[0]) throw MalformedLexicon(where + ": '" + lemmas[0] + "' is its own hypernym");
        lex.hypernyms_[lemmas[0]].insert(lemmas[i]);
      }
    } else if (relation == "antonym") {
      if (lemmas.size() < 2) throw MalformedLexicon(where + ": antonym needs two lemmas");
      for (std::size_t i = 1; i < lemmas.size(); ++i) {
        if (lemmas[i] == lemmas[0]) throw MalformedLexicon(where + ": '" + lemmas[0] + "' is its own antonym");
        auto add_pair = [&](const std::string& from, const std::string& to) {
          auto& list = lex.antonyms_[from];
          if (std::find(list.begin(), list.end(), to) == list.end()) list.push_back(to);
        };
        add_pair(lemmas[0], lemmas[i]);
        add_pair(lemmas[i], lemmas[0]);
      }
    } else {
      throw MalformedLexicon(where + ": unknown relation '" + relation + "'");
    }

    // Class memberships must stay disjoint.
    for (const std::string& lemma : lex.message_verbs_) {
      if (lex.termination_verbs_.contains(lemma)) {
        throw MalformedLexicon(where + ": '" + lemma + "' is both a message and a termination verb");
      }
    }
    for (auto a = lex.keywords_.begin(); a != lex.keywords_.end(); ++a) {
      for (auto b = std::next(a); b != lex.keywords_.end(); ++b) {
        for (const std::string& word : a->second) {
          if (b->second.contains(word)) {
            throw MalformedLexicon(where + ": keyword '" + word + "' is both " + std::string(to_string(a->first)) +
                                   " and " + std::string(to_string(b->first)));
          }
        }
      }
    }
  }
  return lex;
}

VerbType Lexicon::classify_verb(std::string_view lemma) const {
  const std::string key = join_words(split_words(lemma));
  if (message_verbs_.contains(key)) return VerbType::kMessage;
  if (termination_verbs_.contains(key)) return VerbType::kTermination;
  return VerbType::kGenericAction;
}

KeywordType Lexicon::classify_keyword(std::string_view word_or_phrase) const {
  const std::vector<std::string> words = split_words(word_or_phrase);
  KeywordType best = KeywordType::kNone;
  std::size_t best_length = 0;
  for (const auto& [type, entries] : keywords_) {
    for (const std::string& entry : entries) {
      const std::vector<std::string> entry_words = split_words(entry);
      if (entry_words.size() <= best_length || entry_words.size() > words.size()) continue;
      if (std::equal(entry_words.begin(), entry_words.end(), words.begin())) {
        best = type;
        best_length = entry_words.size();
      }
    }
  }
  return best;
}

std::set<std::string> Lexicon::synonyms_of(std::string_view lemma) const {
  auto it = synonyms_.find(to_lower(lemma));
  return it == synonyms_.end() ? std::set<std::string>{} : it->second;
}

std::set<std::string> Lexicon::hypernyms_of(std::string_view lemma) const {
  auto it = hypernyms_.find(to_lower(lemma));
  return it == hypernyms_.end() ? std::set<std::string>{} : it->second;
}

bool Lexicon::are_synonyms(std::string_view a, std::string_view b) const {
  auto it = synonyms_.find(to_lower(a));
  return it != synonyms_.end() && it->second.contains(to_lower(b));
}

std::optional<std::string> Lexicon::antonym_of(std::string_view lemma) const {
  auto it = antonyms_.find(to_lower(lemma));
  if (it == antonyms_.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

bool Lexicon::is_role_noun(std::string_view lemma) const { return role_nouns_.contains(to_lower(lemma)); }

bool Lexicon::is_process_noun(std::string_view lemma) const { return process_nouns_.contains(to_lower(lemma)); }

}  // namespace proc2bpmn
