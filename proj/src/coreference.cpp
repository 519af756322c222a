#include "proc2bpmn/coreference.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <sstream>

#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

namespace {

enum class Gender { kPerson, kNonPerson, kAny };

struct PronounInfo {
  bool third_person = false;
  bool first_or_second = false;
  Gender gender = Gender::kAny;
};

PronounInfo classify_pronoun(std::string_view form) {
  static constexpr std::array<std::string_view, 6> kPerson{"he", "him", "himself", "she", "her", "herself"};
  static constexpr std::array<std::string_view, 2> kNonPerson{"it", "itself"};
  static constexpr std::array<std::string_view, 3> kPlural{"they", "them", "themselves"};
  static constexpr std::array<std::string_view, 11> kLocal{"i",  "me",    "myself", "we",       "us",        "ourselves",
                                                           "you", "yourself", "yourselves", "thou", "thee"};
  const std::string lower = to_lower(form);
  auto in = [&](const auto& set) { return std::find(set.begin(), set.end(), lower) != set.end(); };
  if (in(kPerson)) return {true, false, Gender::kPerson};
  if (in(kNonPerson)) return {true, false, Gender::kNonPerson};
  if (in(kPlural)) return {true, false, Gender::kAny};
  if (in(kLocal)) return {false, true, Gender::kAny};
  return {};
}

bool is_argument_position(std::string_view deprel) {
  static constexpr std::array<std::string_view, 6> kPositions{"nsubj", "nsubjpass", "dobj", "dative", "attr", "pobj"};
  const std::string_view label = normalize_deprel(deprel);
  return std::find(kPositions.begin(), kPositions.end(), label) != kPositions.end();
}

bool is_person_like(const Mention& mention, const Lexicon& lexicon, const std::vector<std::string>& hint) {
  if (mention.entity_label == "PERSON" || mention.entity_label == "ROLE") return true;
  if (mention.entity_label == "ORG") return false;
  if (lexicon.is_role_noun(mention.head_lemma)) return true;
  const std::string normalized = normalize_surface(mention.surface);
  return std::any_of(hint.begin(), hint.end(), [&](const std::string& h) { return normalize_surface(h) == normalized; });
}

bool precedes(const Span& a, const Span& b) {
  return a.sentence < b.sentence || (a.sentence == b.sentence && a.end <= b.start);
}

std::string substituted_form(const Mention& pronoun, const Mention& antecedent) {
  std::string form = antecedent.surface;
  if (form.empty()) return form;
  const bool capital = std::isupper(static_cast<unsigned char>(pronoun.surface.front())) != 0;
  const std::size_t space = form.find(' ');
  const std::string first = form.substr(0, space);
  if (is_determiner(first) || capital) {
    form[0] = static_cast<char>(capital ? std::toupper(static_cast<unsigned char>(form[0]))
                                        : std::tolower(static_cast<unsigned char>(form[0])));
  }
  return form;
}

std::string canonical_for(const Mention& antecedent, const AliasMap& alias_map) {
  if (auto canonical = alias_map.canonical_of(antecedent.surface)) return *canonical;
  const std::string normalized = normalize_surface(antecedent.surface);
  return antecedent.kind == MentionKind::kProper ? title_case(normalized) : normalized;
}

}  // namespace

// ---------------------------------------------------------------------------
// Anaphora

SyntacticRole syntactic_role(const AnnotatedDocument& doc, const Mention& mention) {
  const Sentence& tokens = doc.sentence(mention.span.sentence);
  const Token& head = tokens.at(static_cast<std::size_t>(mention.head - 1));
  const std::string_view label = normalize_deprel(head.deprel);
  if (label == "nsubj") return SyntacticRole::kSubject;
  if (label == "pobj" && head.head != 0) {
    const Token& prep = tokens.at(static_cast<std::size_t>(head.head - 1));
    if (normalize_deprel(prep.deprel) == "agent") return SyntacticRole::kSubject;
    if (to_lower(prep.lemma) == "by" && prep.head != 0 &&
        child_with(tokens, prep.head, {"nsubjpass", "auxpass"}) != 0) {
      return SyntacticRole::kSubject;
    }
  }
  if (label == "dobj" || label == "nsubjpass" || label == "dative" || label == "attr" || label == "pobj") {
    return SyntacticRole::kObject;
  }
  return SyntacticRole::kOther;
}


AnaphoraResult resolve_anaphora(const AnnotatedDocument& doc, const Lexicon& lexicon,
                                const std::vector<std::string>& registry_hint) {
  AnaphoraResult result;
  const std::vector<Mention> mentions = collect_mentions(doc);

  for (const Mention& pronoun : mentions) {
    if (pronoun.kind != MentionKind::kPronoun) continue;
    const Token& token = doc.token(pronoun.span.sentence, pronoun.head);
    if (!is_argument_position(token.deprel)) continue;
    const PronounInfo info = classify_pronoun(token.form);
    if (info.first_or_second) {
      result.unresolved.push_back({pronoun, "first/second person pronouns are never resolved"});
      continue;
    }
    if (!info.third_person) continue;

    // Coreference chains supplied with the document take precedence.
    const CorefChain* covering = nullptr;
    for (const CorefChain& chain : doc.chains) {
      for (const Span& span : chain.mentions) {
        if (span == pronoun.span) covering = &chain;
      }
    }
    if (covering != nullptr) {
      std::optional<Mention> best;
      for (const Span& span : covering->mentions) {
        if (!precedes(span, pronoun.span)) continue;
        Mention candidate = mention_for_span(doc, span);
        if (candidate.kind == MentionKind::kPronoun) continue;
        if (!best || precedes(best->span, candidate.span)) best = candidate;
      }
      if (best) {
        result.resolutions.push_back({pronoun, *best, "input-chain"});
      } else {
        result.unresolved.push_back({pronoun, "coreference chain has no preceding non-pronoun mention"});
      }
      continue;
    }

    // Salience: +3 subject, +2 object, +1 same sentence, -1 per sentence of
    // distance; ties go to the most recent candidate.
    std::optional<Mention> best;
    int best_score = 0;
    SyntacticRole best_role = SyntacticRole::kOther;
    for (const Mention& candidate : mentions) {
      if (candidate.kind == MentionKind::kPronoun) continue;
      const int distance = pronoun.span.sentence - candidate.span.sentence;
      if (distance < 0 || distance > 2) continue;
      if (!precedes(candidate.span, pronoun.span)) continue;
      const bool person = is_person_like(candidate, lexicon, registry_hint);
      if (info.gender == Gender::kPerson && !person) continue;
      if (info.gender == Gender::kNonPerson && person) continue;

      const SyntacticRole role = syntactic_role(doc, candidate);
      int score = role == SyntacticRole::kSubject ? 3 : role == SyntacticRole::kObject ? 2 : 0;
      if (distance == 0) score += 1;
      score -= distance;
      // Candidates arrive in document order, so >= keeps the most recent.
      if (!best || score >= best_score) {
        best = candidate;
        best_score = score;
        best_role = role;
      }
    }
    if (!best) {
      result.unresolved.push_back({pronoun, "no agreeing antecedent within two sentences"});
      continue;
    }
    const char* rule = best_role == SyntacticRole::kSubject  ? "nearest-subject"
                       : best_role == SyntacticRole::kObject ? "nearest-object"
                                                    : "nearest-mention";
    result.resolutions.push_back({pronoun, *best, rule});
  }

  result.document = apply_substitutions(doc, result.resolutions, AliasMap{});
  return result;
}

// ---------------------------------------------------------------------------
// Aliases

AliasMap::AliasMap(std::vector<AliasClass> classes) : classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const AliasClass& a, const AliasClass& b) { return a.canonical < b.canonical; });
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (const std::string& member : classes_[i].members) index_[member] = i;
  }
}

const AliasMap::AliasClass* AliasMap::class_of(std::string_view surface) const {
  auto it = index_.find(normalize_surface(surface));
  return it == index_.end() ? nullptr : &classes_[it->second];
}

std::optional<std::string> AliasMap::canonical_of(std::string_view surface) const {
  const AliasClass* cls = class_of(surface);
  if (cls == nullptr) return std::nullopt;
  return cls->canonical;
}

namespace {

struct Surface {
  std::string normalized;
  std::vector<std::string> words;
  std::string head_lemma;
  bool proper = false;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  for (std::string word; in >> word;) words.push_back(word);
  return words;
}

bool is_suffix(const std::vector<std::string>& shorter, const std::vector<std::string>& longer) {
  return shorter.size() <= longer.size() && std::equal(shorter.rbegin(), shorter.rend(), longer.rbegin());
}

bool modifiers_compatible(const Surface& a, const Surface& b) {
  std::set<std::string> ma(a.words.begin(), a.words.end() - (a.words.empty() ? 0 : 1));
  std::set<std::string> mb(b.words.begin(), b.words.end() - (b.words.empty() ? 0 : 1));
  return std::includes(ma.begin(), ma.end(), mb.begin(), mb.end()) ||
         std::includes(mb.begin(), mb.end(), ma.begin(), ma.end());
}

bool should_merge(const Surface& a, const Surface& b, const Lexicon& lexicon) {
  if (a.normalized == b.normalized) return true;
  const bool same_head = a.head_lemma == b.head_lemma;
  if (same_head && (is_suffix(a.words, b.words) || is_suffix(b.words, a.words))) return true;
  const bool related_heads = same_head || lexicon.are_synonyms(a.head_lemma, b.head_lemma);
  return related_heads && modifiers_compatible(a, b);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

AliasMap detect_aliases(const std::vector<Mention>& mentions, const Lexicon& lexicon) {
  // One entry per distinct normalized surface, built order-independently.
  std::map<std::string, Surface> by_surface;
  for (const Mention& mention : mentions) {
    if (mention.kind == MentionKind::kPronoun) continue;
    std::string normalized = normalize_surface(mention.surface);
    if (normalized.empty()) continue;
    auto [it, inserted] = by_surface.try_emplace(normalized);
    Surface& entry = it->second;
    if (inserted) {
      entry.normalized = normalized;
      entry.words = split(normalized);
      entry.head_lemma = mention.head_lemma;
    } else if (mention.head_lemma < entry.head_lemma) {
      entry.head_lemma = mention.head_lemma;
    }
    entry.proper = entry.proper || mention.kind == MentionKind::kProper;
  }

  std::vector<Surface> surfaces;
  for (auto& [key, entry] : by_surface) surfaces.push_back(std::move(entry));

  std::vector<std::size_t> parent(surfaces.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    for (std::size_t j = i + 1; j < surfaces.size(); ++j) {
      if (should_merge(surfaces[i], surfaces[j], lexicon)) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }

  std::map<std::size_t, AliasMap::AliasClass> grouped;
  std::map<std::size_t, std::string> longest;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const std::size_t root = find_root(parent, i);
    AliasMap::AliasClass& cls = grouped[root];
    cls.members.insert(surfaces[i].normalized);
    cls.has_proper = cls.has_proper || surfaces[i].proper;
    std::string& best = longest[root];
    const std::string& candidate = surfaces[i].normalized;
    if (best.empty() || candidate.size() > best.size() || (candidate.size() == best.size() && candidate < best)) {
      best = candidate;
    }
  }
  std::vector<AliasMap::AliasClass> classes;
  for (auto& [root, cls] : grouped) {
    cls.canonical = title_case(longest[root]);
    classes.push_back(std::move(cls));
  }
  return AliasMap(std::move(classes));
}

std::vector<Mention> alias_candidates(const AnnotatedDocument& doc, const Lexicon& lexicon) {
  std::vector<Mention> out;
  for (Mention& mention : collect_mentions(doc)) {
    if (mention.kind == MentionKind::kPronoun) continue;
    if (mention.entity_label.empty() && lexicon.is_process_noun(mention.head_lemma)) continue;
    out.push_back(std::move(mention));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

AnnotatedDocument apply_substitutions(const AnnotatedDocument& doc, const std::vector<Resolution>& resolutions,
                                      const AliasMap& alias_map) {
  AnnotatedDocument out = doc;

  for (const Resolution& resolution : resolutions) {
    const Span& span = resolution.pronoun.span;
    if (span.sentence < 1 || span.sentence > out.sentence_count() || span.end - span.start != 1 ||
        span.start < 1 || span.start > static_cast<int>(out.sentence(span.sentence).size())) {
      throw StaleResolution("resolution for '" + resolution.pronoun.surface + "' points outside the document");
    }
    Token& token = out.token(span.sentence, span.start);
    if (token.original_form && *token.original_form == resolution.pronoun.surface) continue;
    if (token.original_form || token.form != resolution.pronoun.surface) {
      throw StaleResolution("sentence " + std::to_string(span.sentence) + ", token " + std::to_string(span.start) +
                            ": expected '" + resolution.pronoun.surface + "', found '" + token.form + "'");
    }
    const Token& antecedent_head = doc.token(resolution.antecedent.span.sentence, resolution.antecedent.head);
    token.original_form = token.form;
    token.form = substituted_form(resolution.pronoun, resolution.antecedent);
    token.lemma = canonical_for(resolution.antecedent, alias_map);
    token.upos = antecedent_head.upos;
  }

  if (alias_map.empty()) return out;

  for (const Mention& mention : collect_mentions(out)) {
    if (mention.kind == MentionKind::kPronoun) continue;
    const AliasMap::AliasClass* cls = alias_map.class_of(mention.surface);
    if (cls == nullptr) continue;
    const std::string rendered = strip_determiners(mention.surface);
    if (rendered == cls->canonical) continue;
    if (normalize_surface(rendered) == normalize_surface(cls->canonical) && !cls->has_proper) continue;

    Sentence& tokens = out.sentence(mention.span.sentence);
    for (int t = mention.span.start; t < mention.span.end; ++t) {
      Token& token = tokens[static_cast<std::size_t>(t - 1)];
      if (token.form.empty()) continue;
      if (t != mention.head && is_determiner(token.form)) continue;
      if (!token.original_form) token.original_form = token.form;
      if (t != mention.head) {
        token.form.clear();
        continue;
      }
      // Pronoun substitutions carry their determiner inside the form.
      const std::size_t space = token.form.find(' ');
      const std::string first = token.form.substr(0, space);
      token.form = space != std::string::npos && is_determiner(first) ? first + ' ' + cls->canonical : cls->canonical;
      token.lemma = cls->canonical;
      if (cls->has_proper) token.upos = "PROPN";
    }
  }
  return out;
}

std::string coreference_report(const AnaphoraResult& result, const AliasMap& alias_map) {
  std::ostringstream out;
  out << "[coreference]\n";
  for (const Resolution& r : result.resolutions) {
    out << "resolved s" << r.pronoun.span.sentence << ":t" << r.pronoun.head << " '" << r.pronoun.surface << "' -> '"
        << r.antecedent.surface << "' (s" << r.antecedent.span.sentence << ":t" << r.antecedent.head
        << ", rule " << r.rule << ")\n";
  }
  for (const UnresolvedPronoun& u : result.unresolved) {
    out << "unresolved s" << u.pronoun.span.sentence << ":t" << u.pronoun.head << " '" << u.pronoun.surface
        << "': " << u.reason << '\n';
  }
  for (const AliasMap::AliasClass& cls : alias_map.classes()) {
    out << "alias-class '" << cls.canonical << "':";
    for (const std::string& member : cls.members) out << " '" << member << "'";
    out << '\n';
  }
  return out.str();
}

}  // namespace proc2bpmn
