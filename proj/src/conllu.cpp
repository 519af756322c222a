#include <charconv>
#include <sstream>

#include "proc2bpmn/annotation.hpp"
#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

namespace {

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> columns;
  if (line.find('\t') != std::string::npos) {
    std::size_t begin = 0;
    while (true) {
      const std::size_t tab = line.find('\t', begin);
      columns.push_back(line.substr(begin, tab - begin));
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
  } else {
    // Hand-written fixtures often use runs of spaces instead of tabs.
    std::istringstream in(line);
    for (std::string column; in >> column;) columns.push_back(column);
  }
  return columns;
}

bool parse_int(const std::string& text, int& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

AnnotatedDocument parse_conllu(std::string_view bytes) {
  AnnotatedDocument doc;
  Sentence current;
  int line_number = 0;

  auto flush = [&] {
    if (!current.empty()) doc.sentences.push_back(std::move(current));
    current.clear();
  };

  std::istringstream in{std::string(bytes)};
  for (std::string line; std::getline(in, line);) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      static constexpr std::string_view kNewdoc = "# newdoc id = ";
      if (line.starts_with(kNewdoc)) doc.source_id = line.substr(kNewdoc.size());
      continue;
    }
    const std::vector<std::string> columns = split_columns(line);
    const std::string where = "CoNLL-U line " + std::to_string(line_number);
    if (columns.size() != 10) {
      throw MalformedInput(where + ": expected 10 columns, found " + std::to_string(columns.size()));
    }
    if (columns[0].find_first_of("-.") != std::string::npos) continue;

    Token token;
    if (!parse_int(columns[0], token.index)) throw MalformedInput(where + ": non-numeric token index");
    if (!parse_int(columns[6], token.head)) throw MalformedInput(where + ": non-numeric head '" + columns[6] + "'");
    token.form = columns[1];
    token.lemma = columns[2];
    token.upos = columns[3];
    token.deprel = columns[7];
    current.push_back(std::move(token));
  }
  flush();

  if (doc.sentences.empty()) throw MalformedInput("CoNLL-U input contains no sentences");

  const std::vector<Violation> violations = validate_document(doc);
  if (!violations.empty()) {
    throw SchemaViolation(violations.front().location() + ": " + violations.front().reason);
  }
  return doc;
}

std::string serialize_conllu(const AnnotatedDocument& doc) {
  std::ostringstream out;
  if (!doc.source_id.empty()) out << "# newdoc id = " << doc.source_id << '\n';
  for (const Sentence& sentence : doc.sentences) {
    for (const Token& token : sentence) {
      out << token.index << '\t' << token.form << '\t' << token.lemma << '\t' << token.upos << "\t_\t_\t"
          << token.head << '\t' << token.deprel << "\t_\t_\n";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace proc2bpmn
