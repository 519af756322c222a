#include "proc2bpmn/extraction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

std::string_view to_string(ParticipantKind kind) {
  switch (kind) {
    case ParticipantKind::kPerson: return "PERSON";
    case ParticipantKind::kOrg: return "ORG";
    case ParticipantKind::kRole: return "ROLE";
    case ParticipantKind::kSystem: return "SYSTEM";
  }
  return "ROLE";
}

const Participant* ParticipantRegistry::find(std::string_view surface) const {
  const std::string normalized = normalize_surface(surface);
  for (const Participant& p : participants_) {
    if (p.aliases.contains(normalized)) return &p;
  }
  return nullptr;
}

const Participant* ParticipantRegistry::by_name(std::string_view canonical_name) const {
  for (const Participant& p : participants_) {
    if (p.canonical_name == canonical_name) return &p;
  }
  return nullptr;
}

namespace {

std::optional<ParticipantKind> kind_from_label(std::string_view label) {
  if (label == "PERSON") return ParticipantKind::kPerson;
  if (label == "ORG") return ParticipantKind::kOrg;
  if (label == "ROLE") return ParticipantKind::kRole;
  if (label == "SYSTEM") return ParticipantKind::kSystem;
  return std::nullopt;
}

const Token& token_at(const Sentence& sentence, int index) { return sentence.at(static_cast<std::size_t>(index - 1)); }

std::string_view deprel_of(const Sentence& sentence, int index) {
  return normalize_deprel(token_at(sentence, index).deprel);
}

bool is_action_verb(const Sentence& sentence, int index) {
  const Token& token = token_at(sentence, index);
  if (token.upos != "VERB") return false;
  const std::string_view label = normalize_deprel(token.deprel);
  if (label == "root") return true;
  return label == "conj" && token.head != 0 && is_action_verb(sentence, token.head);
}

bool is_passive(const Sentence& sentence, int verb) {
  return child_with(sentence, verb, {"nsubjpass", "auxpass"}) != 0;
}

/// Noun phrase head of the passive agent ("by the director"), or 0.
int agent_of(const Sentence& sentence, int verb) {
  if (int agent = child_with(sentence, verb, {"agent"}); agent != 0) {
    if (token_at(sentence, agent).upos == "NOUN" || token_at(sentence, agent).upos == "PROPN") return agent;
    return child_with(sentence, agent, {"pobj"});
  }
  if (!is_passive(sentence, verb)) return 0;
  for (int child : children_of(sentence, verb)) {
    const Token& token = token_at(sentence, child);
    const std::string_view label = normalize_deprel(token.deprel);
    if (label == "prep" && to_lower(token.lemma) == "by") return child_with(sentence, child, {"pobj"});
    if (label == "obl" && child_with(sentence, child, {"case"}) != 0 &&
        to_lower(token_at(sentence, child_with(sentence, child, {"case"})).lemma) == "by") {
      return child;
    }
  }
  return 0;
}

int subject_of(const Sentence& sentence, int verb) {
  if (int subject = child_with(sentence, verb, {"nsubj"}); subject != 0) return subject;
  return agent_of(sentence, verb);
}

int direct_object_of(const Sentence& sentence, int verb) {
  if (int object = child_with(sentence, verb, {"dobj", "attr"}); object != 0) return object;
  if (int patient = child_with(sentence, verb, {"nsubjpass"}); patient != 0) return patient;
  for (int child : children_of(sentence, verb)) {
    const Token& token = token_at(sentence, child);
    if (normalize_deprel(token.deprel) != "prep" || to_lower(token.lemma) == "by") continue;
    if (int object = child_with(sentence, child, {"pobj"}); object != 0) return object;
  }
  return 0;
}

/// Object shared across a verb coordination: "reviews and forwards the file".
int object_of(const Sentence& sentence, int verb) {
  if (int object = direct_object_of(sentence, verb); object != 0) return object;
  for (int child : children_of(sentence, verb)) {
    if (deprel_of(sentence, child) == "conj" && token_at(sentence, child).upos == "VERB") {
      if (int object = direct_object_of(sentence, child); object != 0) return object;
    }
  }
  const Token& token = token_at(sentence, verb);
  if (normalize_deprel(token.deprel) == "conj" && token.head != 0) return direct_object_of(sentence, token.head);
  return 0;
}

bool is_negated(const Sentence& sentence, int verb) {
  for (int child : children_of(sentence, verb)) {
    const Token& token = token_at(sentence, child);
    const std::string_view label = normalize_deprel(token.deprel);
    const std::string word = to_lower(token.form);
    if (label == "neg") return true;
    if (label == "advmod" && (word == "not" || word == "n't" || word == "never")) return true;
  }
  return false;
}

std::string phrase_text(const AnnotatedDocument& doc, int sentence, int head) {
  const Span span = noun_phrase_span(doc, sentence, head);
  return span_text(doc.sentence(sentence), span.start, span.end);
}

std::string last_word_lower(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  for (std::string w; in >> w;) word = w;
  return to_lower(word);
}

}  // namespace

// ---------------------------------------------------------------------------

ParticipantRegistry extract_participants(const AnnotatedDocument& doc, const AliasMap& alias_map,
                                         const Lexicon& lexicon) {
  struct Pending {
    Participant participant;
    bool has_label = false;
  };
  std::map<std::string, Pending> by_name;
  std::vector<Mention> mentions = collect_mentions(doc);

  for (const Mention& mention : mentions) {
    if (mention.kind == MentionKind::kPronoun) continue;
    const std::optional<ParticipantKind> labeled = kind_from_label(mention.entity_label);
    const bool subject_like = syntactic_role(doc, mention) == SyntacticRole::kSubject;
    if (!labeled && !subject_like) continue;
    if (!labeled && lexicon.is_process_noun(mention.head_lemma)) continue;

    const AliasMap::AliasClass* cls = alias_map.class_of(mention.surface);
    const std::string normalized = normalize_surface(mention.surface);
    if (normalized.empty()) continue;
    const std::string name = cls != nullptr ? cls->canonical : title_case(normalized);

    auto [it, inserted] = by_name.try_emplace(name);
    Pending& pending = it->second;
    if (inserted) {
      pending.participant.canonical_name = name;
      if (cls != nullptr) {
        pending.participant.aliases = cls->members;
      } else {
        pending.participant.aliases = {normalized};
      }
    }
    if (labeled && !pending.has_label) {
      pending.participant.kind = *labeled;
      pending.has_label = true;
    }
  }
  if (by_name.empty()) throw NoParticipants("no participant appears as a subject, agent, or labeled entity");

  std::vector<Participant> participants;
  for (auto& [name, pending] : by_name) {
    Participant& p = pending.participant;
    for (const Mention& mention : mentions) {
      if (mention.kind != MentionKind::kPronoun && p.aliases.contains(normalize_surface(mention.surface))) {
        p.first_mention = mention.span;
        break;
      }
    }
    participants.push_back(std::move(p));
  }
  std::stable_sort(participants.begin(), participants.end(),
                   [](const Participant& a, const Participant& b) { return a.first_mention < b.first_mention; });
  return ParticipantRegistry(std::move(participants));
}

// ---------------------------------------------------------------------------

std::vector<SvoTriple> extract_svo(const AnnotatedDocument& doc, const ParticipantRegistry& registry,
                                   const Lexicon& lexicon) {
  std::vector<SvoTriple> triples;
  std::optional<std::string> previous_subject;

  for (int s = 1; s <= doc.sentence_count(); ++s) {
    const Sentence& sentence = doc.sentence(s);
    std::map<int, std::optional<std::string>> resolved_subjects;

    for (const Token& token : sentence) {
      const int verb = token.index;
      if (!is_action_verb(sentence, verb)) continue;

      SvoTriple triple;
      triple.sentence = s;
      triple.verb_index = verb;
      triple.verb_lemma = to_lower(token.lemma);
      triple.verb_type = lexicon.classify_verb(triple.verb_lemma);
      triple.negated = is_negated(sentence, verb);
      if (int particle = child_with(sentence, verb, {"prt"}); particle != 0) {
        triple.verb_lemma += ' ' + to_lower(token_at(sentence, particle).lemma);
      }

      const int subject = subject_of(sentence, verb);
      if (subject != 0) {
        const Mention mention = mention_at(doc, s, subject);
        triple.subject_phrase = mention.surface;
        if (mention.kind == MentionKind::kPronoun) {
          // Unresolved pronoun: attribute to the previous actor.
          triple.subject = previous_subject;
        } else if (const Participant* p = registry.find(mention.surface)) {
          triple.subject = p->canonical_name;
        }
      } else if (deprel_of(sentence, verb) == "conj" && resolved_subjects.contains(token.head)) {
        triple.subject = resolved_subjects[token.head];
      } else {
        triple.subject = previous_subject;
      }
      resolved_subjects[verb] = triple.subject;

      if (int object = object_of(sentence, verb); object != 0) triple.object_phrase = phrase_text(doc, s, object);
      if (int indirect = child_with(sentence, verb, {"dative"}); indirect != 0) {
        const std::string extra = strip_determiners(phrase_text(doc, s, indirect));
        triple.object_phrase = triple.object_phrase.empty() ? extra : triple.object_phrase + ' ' + extra;
      }

      if (triple.subject) previous_subject = triple.subject;
      triples.push_back(std::move(triple));
    }
  }
  return triples;
}

// ---------------------------------------------------------------------------

std::string complement_condition(const std::vector<std::string>& words, std::size_t verb_word, std::string_view verb_lemma,
                                 const Lexicon& lexicon) {
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& part : parts) {
      if (!out.empty()) out += ' ';
      out += part;
    }
    return out;
  };
  const std::optional<std::string> antonym = verb_word < words.size() ? lexicon.antonym_of(verb_lemma) : std::nullopt;
  if (!antonym) return "not " + join(words);

  const std::string lemma = to_lower(verb_lemma);
  const std::string form = to_lower(words[verb_word]);
  const std::string& a = *antonym;
  const bool a_ends_e = !a.empty() && a.back() == 'e';
  std::string inflected = a;
  if (form != lemma) {
    std::string suffix;
    if (form.starts_with(lemma)) {
      suffix = form.substr(lemma.size());
    } else if (lemma.ends_with('e') && form.starts_with(lemma.substr(0, lemma.size() - 1))) {
      suffix = form.substr(lemma.size() - 1);  // approve -> approving
    }
    if (suffix == "d") suffix = "ed";
    // pass -> passes, finish -> finishes
    if (suffix == "s" && (a.ends_with('s') || a.ends_with('x') || a.ends_with('z') || a.ends_with("ch") || a.ends_with("sh"))) {
      suffix = "es";
    }
    if (!suffix.empty() && (suffix.front() == 'e' || suffix.front() == 'i') && a_ends_e) {
      inflected = a.substr(0, a.size() - 1) + suffix;
    } else {
      inflected = a + suffix;
    }
  }
  std::vector<std::string> out = words;
  out[verb_word] = inflected;
  return join(out);
}

namespace {

struct ClauseText {
  std::vector<std::string> words;
  std::size_t verb_word = 0;
  std::string verb_lemma;
};

/// Clause tokens minus the marker, determiners and punctuation; lower-case
/// except proper nouns.
ClauseText condition_clause(const Sentence& sentence, int clause_verb, const std::set<int>& marker_tokens) {
  ClauseText clause;
  clause.verb_lemma = to_lower(token_at(sentence, clause_verb).lemma);
  for (int t : subtree_of(sentence, clause_verb)) {
    const Token& token = token_at(sentence, t);
    if (marker_tokens.contains(t) || token.form.empty()) continue;
    if (token.upos == "DET" || token.upos == "PUNCT") continue;
    std::string word = token.original_form ? strip_determiners(token.form) : token.form;
    if (token.upos != "PROPN") word = to_lower(word);
    if (word.empty()) continue;
    if (t == clause_verb) clause.verb_word = clause.words.size();
    clause.words.push_back(std::move(word));
  }
  return clause;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

/// Marker tokens of a conditional adverbial clause ("if", "in case"), or an
/// empty set when the clause is not conditional.
std::set<int> conditional_marker(const Sentence& sentence, int clause_verb, const Lexicon& lexicon) {
  std::set<int> tokens;
  std::string phrase;
  for (int child : children_of(sentence, clause_verb)) {
    if (deprel_of(sentence, child) != "mark") continue;
    for (int t : subtree_of(sentence, child)) {
      tokens.insert(t);
      phrase += (phrase.empty() ? "" : " ") + token_at(sentence, t).form;
    }
  }
  if (tokens.empty()) {
    // "When the order arrives" is often parsed with "when" as advmod.
    const std::vector<int> clause = subtree_of(sentence, clause_verb);
    const int first = clause.front();
    if (deprel_of(sentence, first) == "advmod" && token_at(sentence, first).head == clause_verb) {
      tokens.insert(first);
      phrase = token_at(sentence, first).form;
    }
  }
  if (tokens.empty() || lexicon.classify_keyword(phrase) != KeywordType::kConditional) return {};
  return tokens;
}

bool has_alternative_marker(const Sentence& sentence, int verb, const Lexicon& lexicon) {
  for (int child : children_of(sentence, verb)) {
    if (lexicon.classify_keyword(token_at(sentence, child).form) == KeywordType::kAlternative) return true;
  }
  return false;
}

}  // namespace

std::vector<ConditionAttachment> extract_conditions(const AnnotatedDocument& doc, const std::vector<SvoTriple>& triples,
                                                    const Lexicon& lexicon) {
  std::vector<ConditionAttachment> attachments;

  for (std::size_t i = 0; i < triples.size(); ++i) {
    const SvoTriple& triple = triples[i];
    const Sentence& sentence = doc.sentence(triple.sentence);
    if (deprel_of(sentence, triple.verb_index) == "conj") continue;  // covered by its head's clause

    std::vector<std::size_t> governed{i};
    for (std::size_t j = i + 1; j < triples.size() && triples[j].sentence == triple.sentence; ++j) {
      int cursor = triples[j].verb_index;
      while (cursor != 0 && deprel_of(sentence, cursor) == "conj") cursor = token_at(sentence, cursor).head;
      if (cursor == triple.verb_index) governed.push_back(j);
    }

    std::optional<ClauseText> clause;
    for (int child : children_of(sentence, triple.verb_index)) {
      if (deprel_of(sentence, child) != "advcl") continue;
      const std::set<int> marker = conditional_marker(sentence, child, lexicon);
      if (marker.empty()) continue;
      clause = condition_clause(sentence, child, marker);
      break;
    }

    if (clause && !clause->words.empty()) {
      ConditionAttachment attachment;
      attachment.condition_text = join_words(clause->words);
      attachment.complement_text = complement_condition(clause->words, clause->verb_word, clause->verb_lemma, lexicon);
      attachment.governed = std::move(governed);
      attachment.sentence = triple.sentence;
      attachments.push_back(std::move(attachment));
      continue;
    }

    if (!has_alternative_marker(sentence, triple.verb_index, lexicon)) continue;

    std::optional<std::size_t> open;
    for (std::size_t k = attachments.size(); k-- > 0;) {
      const ConditionAttachment& candidate = attachments[k];
      if (candidate.sentence < triple.sentence - 1) break;
      if (!candidate.alternative && !candidate.polarity_sibling) {
        open = k;
        break;
      }
    }
    if (!open) {
      throw DanglingAlternative("sentence " + std::to_string(triple.sentence) +
                                ": alternative branch without a preceding conditional");
    }
    ConditionAttachment attachment;
    attachment.alternative = true;
    attachment.condition_text = attachments[*open].complement_text;
    attachment.complement_text = attachments[*open].condition_text;
    attachment.governed = std::move(governed);
    attachment.polarity_sibling = *open;
    attachment.sentence = triple.sentence;
    attachments[*open].polarity_sibling = attachments.size();
    attachments.push_back(std::move(attachment));
  }
  return attachments;
}

// ---------------------------------------------------------------------------

std::optional<int> detect_termination(const AnnotatedDocument& doc, const std::vector<SvoTriple>& triples,
                                      const Lexicon& lexicon) {
  for (int s = 1; s <= doc.sentence_count(); ++s) {
    for (const SvoTriple& triple : triples) {
      if (triple.sentence != s || triple.verb_type != VerbType::kTermination) continue;
      if (lexicon.is_process_noun(last_word_lower(triple.subject_phrase)) ||
          lexicon.is_process_noun(last_word_lower(triple.object_phrase))) {
        return s;
      }
    }

    std::vector<std::string> lemmas;
    for (const Token& token : doc.sentence(s)) {
      if (token.upos == "DET" || token.upos == "ADV" || token.upos == "PUNCT" || token.form.empty()) continue;
      lemmas.push_back(last_word_lower(token.lemma));
    }
    for (const std::vector<std::string>& pattern : lexicon.termination_patterns()) {
      if (pattern.empty() || pattern.size() > lemmas.size()) continue;
      if (std::search(lemmas.begin(), lemmas.end(), pattern.begin(), pattern.end()) != lemmas.end()) return s;
    }
  }
  return std::nullopt;
}

std::string extraction_report(const ParticipantRegistry& registry, const std::vector<SvoTriple>& triples,
                              const std::vector<ConditionAttachment>& conditions, std::optional<int> termination) {
  std::ostringstream out;
  out << "[extraction]\n";
  for (const Participant& p : registry.participants()) {
    out << "participant '" << p.canonical_name << "' kind=" << to_string(p.kind) << " first=s" << p.first_mention.sentence
        << ":t" << p.first_mention.start << '\n';
  }
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const SvoTriple& t = triples[i];
    out << "triple " << i << " s" << t.sentence << ":t" << t.verb_index << " (" << t.subject.value_or("UNKNOWN") << ", "
        << t.verb_lemma << ", " << t.object_phrase << ") type=" << to_string(t.verb_type)
        << (t.negated ? " negated" : "") << '\n';
  }
  for (const ConditionAttachment& c : conditions) {
    out << (c.alternative ? "alternative" : "condition") << " '" << c.condition_text << "' governs";
    for (std::size_t g : c.governed) out << ' ' << g;
    if (c.polarity_sibling) out << " sibling=" << *c.polarity_sibling;
    out << '\n';
  }
  out << "termination " << (termination ? "s" + std::to_string(*termination) : std::string("none")) << '\n';
  return out.str();
}

}  // namespace proc2bpmn
