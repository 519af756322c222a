#include <doctest.h>

#include <set>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/error.hpp"
#include "support/support.hpp"

using namespace proc2bpmn;
using testing_support::fixture;
using testing_support::read_file;

namespace {

const char* kMinimal = R"({"source_id": "m", "sentences": [[
  {"form": "Start", "lemma": "start", "upos": "VERB", "head": 0, "deprel": "root"}]]})";

std::string error_message(const std::string& json) {
  try {
    parse_annotation_json(json);
  } catch (const SchemaViolation& e) {
    return e.what();
  }
  return "";
}

Sentence tokens(std::initializer_list<std::tuple<const char*, int, const char*>> spec) {
  Sentence s;
  int i = 0;
  for (const auto& [form, head, deprel] : spec) s.push_back({++i, form, form, "X", head, deprel, std::nullopt});
  return s;
}

}  // namespace

TEST_CASE("minimal annotation document") {
  const AnnotatedDocument doc = parse_annotation_json(kMinimal);
  CHECK(doc.sentence_count() == 1);
  CHECK(doc.sentence(1).size() == 1);
  CHECK(doc.token(1, 1).form == "Start");
  CHECK(doc.token(1, 1).index == 1);
  CHECK(doc.source_id == "m");
}

TEST_CASE("out-of-range head names the sentence and token") {
  const std::string msg = error_message(R"({"sentences": [[
    {"form": "Start", "lemma": "start", "upos": "VERB", "head": 2, "deprel": "root"}]]})");
  CHECK(msg.find("sentence 1, token 1") != std::string::npos);
}

TEST_CASE("structurally broken input is MalformedInput") {
  CHECK_THROWS_AS(parse_annotation_json("{not json"), MalformedInput);
  CHECK_THROWS_AS(parse_annotation_json("[1, 2]"), MalformedInput);
  CHECK_THROWS_AS(parse_annotation_json(""), MalformedInput);
}

TEST_CASE("schema violations") {
  SUBCASE("missing field") {
    CHECK(error_message(R"({"sentences": [[{"form": "a", "upos": "X", "head": 0, "deprel": "root"}]]})")
              .find("lemma") != std::string::npos);
  }
  SUBCASE("wrong type") {
    CHECK_FALSE(error_message(R"({"sentences": [[{"form": "a", "lemma": "a", "upos": "X", "head": "0", "deprel": "root"}]]})")
                    .empty());
  }
  SUBCASE("no sentences") { CHECK_FALSE(error_message(R"({"sentences": []})").empty()); }
  SUBCASE("index disagrees with position") {
    CHECK_FALSE(error_message(R"({"sentences": [[{"index": 2, "form": "a", "lemma": "a", "upos": "X", "head": 0, "deprel": "root"}]]})")
                    .empty());
  }
  SUBCASE("two roots") {
    const std::string msg = error_message(R"({"sentences": [[
      {"form": "a", "lemma": "a", "upos": "X", "head": 0, "deprel": "root"},
      {"form": "b", "lemma": "b", "upos": "X", "head": 0, "deprel": "root"}]]})");
    CHECK(msg.find("sentence 1") != std::string::npos);
  }
  SUBCASE("entity span past the sentence") {
    const std::string msg = error_message(R"({"sentences": [[
      {"form": "a", "lemma": "a", "upos": "X", "head": 0, "deprel": "root"}]],
      "entities": [{"sentence": 1, "start": 1, "end": 3, "label": "ORG"}]})");
    CHECK_FALSE(msg.empty());
  }
  SUBCASE("single-mention chain") {
    const std::string msg = error_message(R"({"sentences": [[
      {"form": "a", "lemma": "a", "upos": "X", "head": 0, "deprel": "root"}]],
      "chains": [{"mentions": [{"sentence": 1, "start": 1, "end": 2}]}]})");
    CHECK_FALSE(msg.empty());
  }
}

TEST_CASE("validate_document finds cycles and self heads") {
  AnnotatedDocument doc;
  doc.sentences.push_back(tokens({{"a", 0, "root"}, {"b", 3, "dep"}, {"c", 2, "dep"}}));
  CHECK_FALSE(validate_document(doc).empty());

  doc.sentences[0] = tokens({{"a", 0, "root"}, {"b", 2, "dep"}});
  const auto violations = validate_document(doc);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().location() == "sentence 1, token 2");

  doc.sentences[0] = tokens({{"a", 0, "root"}, {"b", 1, "dep"}});
  CHECK(validate_document(doc).empty());
}

TEST_CASE("Table-1 fixture: 7 sentences, 4 distinct ORG/ROLE entities") {
  const AnnotatedDocument doc = parse_annotation_json(read_file(fixture("table1.annotation.json")));
  CHECK(doc.sentence_count() == 7);
  std::set<std::string> distinct;
  for (const EntitySpan& e : doc.entities) {
    if (e.label == "ORG" || e.label == "ROLE") {
      distinct.insert(span_text(doc.sentence(e.span.sentence), e.span.start, e.span.end));
    }
  }
  CHECK(distinct == std::set<std::string>{"Affairs Department", "Production Manager", "Affairs Director",
                                          "Confidential Secretary"});
}

TEST_CASE("annotation JSON round trip") {
  AnnotatedDocument doc = parse_annotation_json(read_file(fixture("table1.annotation.json")));
  CHECK(parse_annotation_json(serialize_annotation_json(doc)) == doc);

  doc.token(4, 3).original_form = "he";
  doc.token(4, 3).form = "the director";
  doc.chains.push_back({{{3, 14, 16}, {4, 3, 4}}});
  const std::string bytes = serialize_annotation_json(doc);
  CHECK(parse_annotation_json(bytes) == doc);
  CHECK(serialize_annotation_json(parse_annotation_json(bytes)) == bytes);
}

TEST_CASE("CoNLL-U path matches the JSON path") {
  AnnotatedDocument doc = parse_annotation_json(read_file(fixture("table1.annotation.json")));
  const AnnotatedDocument from_conllu = parse_conllu(serialize_conllu(doc));
  CHECK(from_conllu.source_id == doc.source_id);
  CHECK(from_conllu.sentences == doc.sentences);
  CHECK(from_conllu.entities.empty());
  CHECK(from_conllu.chains.empty());
}

TEST_CASE("CoNLL-U reader details") {
  const std::string text =
      "# newdoc id = d1\n"
      "# text = It's done.\n"
      "1-2\tIt's\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tIt\tit\tPRON\t_\t_\t3\tnsubj\t_\t_\n"
      "2\t's\tbe\tAUX\t_\t_\t3\tcop\t_\t_\n"
      "2.1\tghost\tghost\tNOUN\t_\t_\t_\t_\t_\t_\n"
      "3\tdone\tdo\tVERB\t_\t_\t0\troot\t_\t_\n"
      "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n"
      "\n"
      "1\tStart\tstart\tVERB\t_\t_\t0\troot\t_\t_\n";
  const AnnotatedDocument doc = parse_conllu(text);
  CHECK(doc.source_id == "d1");
  REQUIRE(doc.sentence_count() == 2);
  CHECK(doc.sentence(1).size() == 4);
  CHECK(doc.token(1, 2).form == "'s");
  CHECK(doc.token(2, 1).deprel == "root");

  CHECK_THROWS_AS(parse_conllu("1\tA\ta\tX\t_\t_\tzero\troot\t_\t_\n"), MalformedInput);
  CHECK_THROWS_AS(parse_conllu("1\tA\ta\tX\n"), MalformedInput);
  CHECK_THROWS_AS(parse_conllu("\n\n"), MalformedInput);
  CHECK_THROWS_AS(parse_conllu("1\tA\ta\tX\t_\t_\t5\troot\t_\t_\n"), SchemaViolation);
}

TEST_CASE("deprel aliases") {
  CHECK(normalize_deprel("obj") == "dobj");
  CHECK(normalize_deprel("nsubj:pass") == "nsubjpass");
  CHECK(normalize_deprel("compound:prt") == "prt");
  CHECK(normalize_deprel("obl:agent") == "agent");
  CHECK(normalize_deprel("ROOT") == "root");
  CHECK(normalize_deprel("iobj") == "dative");
  CHECK(normalize_deprel("dobj") == "dobj");
  CHECK(normalize_deprel("advcl") == "advcl");
}

TEST_CASE("tree helpers") {
  // "If the director rejects it , close"
  const Sentence s = tokens({{"If", 4, "mark"}, {"the", 3, "det"}, {"director", 4, "nsubj"}, {"rejects", 7, "advcl"},
                             {"it", 4, "obj"}, {",", 7, "punct"}, {"close", 0, "root"}});
  CHECK(children_of(s, 4) == std::vector<int>{1, 3, 5});
  CHECK(subtree_of(s, 4) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(child_with(s, 4, {"dobj"}) == 5);
  CHECK(child_with(s, 4, {"agent"}) == 0);
  CHECK(span_text(s, 2, 4) == "the director");
}
