#include <json.hpp>

#include <sstream>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw SchemaViolation(where + ": " + what);
}

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.is_object()) schema_error(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_string()) schema_error(where, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

int require_int(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_number_integer()) schema_error(where, std::string("field '") + key + "' must be an integer");
  return value.get<int>();
}

Span read_span(const json& object, const std::string& where) {
  return {require_int(object, "sentence", where), require_int(object, "start", where),
          require_int(object, "end", where)};
}

void throw_if_invalid(const AnnotatedDocument& doc) {
  const std::vector<Violation> violations = validate_document(doc);
  if (violations.empty()) return;
  std::ostringstream message;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i != 0) message << "; ";
    message << violations[i].location() << ": " << violations[i].reason;
  }
  throw SchemaViolation(message.str());
}

}  // namespace

AnnotatedDocument parse_annotation_json(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("annotation JSON: ") + e.what());
  }
  if (!root.is_object()) throw MalformedInput("annotation JSON: top level must be an object");

  AnnotatedDocument doc;
  if (auto it = root.find("source_id"); it != root.end()) {
    if (!it->is_string()) schema_error("document", "field 'source_id' must be a string");
    doc.source_id = it->get<std::string>();
  }

  const json& sentences = require(root, "sentences", "document");
  if (!sentences.is_array()) schema_error("document", "field 'sentences' must be an array");
  int s = 0;
  for (const json& sentence_json : sentences) {
    ++s;
    const std::string sentence_where = "sentence " + std::to_string(s);
    if (!sentence_json.is_array()) schema_error(sentence_where, "expected an array of tokens");
    Sentence sentence;
    int t = 0;
    for (const json& token_json : sentence_json) {
      ++t;
      const std::string where = sentence_where + ", token " + std::to_string(t);
      Token token;
      token.index = t;
      if (auto it = token_json.find("index"); token_json.is_object() && it != token_json.end()) {
        token.index = require_int(token_json, "index", where);
      }
      token.form = require_string(token_json, "form", where);
      token.lemma = require_string(token_json, "lemma", where);
      token.upos = require_string(token_json, "upos", where);
      token.head = require_int(token_json, "head", where);
      token.deprel = require_string(token_json, "deprel", where);
      if (auto it = token_json.find("original_form"); it != token_json.end()) {
        token.original_form = require_string(token_json, "original_form", where);
      }
      sentence.push_back(std::move(token));
    }
    doc.sentences.push_back(std::move(sentence));
  }

  if (auto it = root.find("entities"); it != root.end()) {
    if (!it->is_array()) schema_error("document", "field 'entities' must be an array");
    int e = 0;
    for (const json& entity_json : *it) {
      const std::string where = "entity " + std::to_string(++e);
      doc.entities.push_back({read_span(entity_json, where), require_string(entity_json, "label", where)});
    }
  }
  if (auto it = root.find("chains"); it != root.end()) {
    if (!it->is_array()) schema_error("document", "field 'chains' must be an array");
    int c = 0;
    for (const json& chain_json : *it) {
      const std::string where = "chain " + std::to_string(++c);
      const json& mentions = require(chain_json, "mentions", where);
      if (!mentions.is_array()) schema_error(where, "field 'mentions' must be an array");
      CorefChain chain;
      for (const json& mention : mentions) chain.mentions.push_back(read_span(mention, where));
      doc.chains.push_back(std::move(chain));
    }
  }

  throw_if_invalid(doc);
  return doc;
}

std::string serialize_annotation_json(const AnnotatedDocument& doc) {
  json root = json::object();
  root["source_id"] = doc.source_id;
  json sentences = json::array();
  for (const Sentence& sentence : doc.sentences) {
    json tokens = json::array();
    for (const Token& token : sentence) {
      json t = {{"index", token.index}, {"form", token.form},   {"lemma", token.lemma},
                {"upos", token.upos},   {"head", token.head},   {"deprel", token.deprel}};
      if (token.original_form) t["original_form"] = *token.original_form;
      tokens.push_back(std::move(t));
    }
    sentences.push_back(std::move(tokens));
  }
  root["sentences"] = std::move(sentences);
  json entities = json::array();
  for (const EntitySpan& entity : doc.entities) {
    entities.push_back({{"sentence", entity.span.sentence},
                        {"start", entity.span.start},
                        {"end", entity.span.end},
                        {"label", entity.label}});
  }
  root["entities"] = std::move(entities);
  json chains = json::array();
  for (const CorefChain& chain : doc.chains) {
    json mentions = json::array();
    for (const Span& span : chain.mentions) {
      mentions.push_back({{"sentence", span.sentence}, {"start", span.start}, {"end", span.end}});
    }
    chains.push_back({{"mentions", std::move(mentions)}});
  }
  root["chains"] = std::move(chains);
  return root.dump(2) + "\n";
}

}  // namespace proc2bpmn
