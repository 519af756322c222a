// proc2bpmn: annotated process narratives -> process table -> BPMN 2.0.
//
//   proc2bpmn extract --in doc.annotation.json --out doc.csv
//   proc2bpmn compile --in doc.csv --out doc.bpmn
//   proc2bpmn run --in doc.txt --annotator "python -m annotator" --out doc.bpmn
//
// Exit status: 0 success, 1 input/schema error, 2 nothing to extract
// (EmptyProcess, NoParticipants), 3 annotator failure.

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "proc2bpmn/error.hpp"
#include "proc2bpmn/pipeline.hpp"

namespace fs = std::filesystem;
using namespace proc2bpmn;

namespace {

enum class InputKind { kText, kAnnotationJson, kConllu, kTableCsv };
enum class Stage { kTable, kBpmn };

struct PipelineConfig {
  std::string input;
  std::string kind = "auto";
  std::string output;
  Stage target = Stage::kBpmn;
  std::string lexicon;
  std::string annotator;
  bool debug_coref = false;
  bool debug_svo = false;
};

// Failure that maps straight to an exit status.
struct Exit {
  int status;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int status, std::string kind, std::string message) {
  throw Exit{status, std::move(kind), std::move(message)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(1, "MalformedInput", "cannot read " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

InputKind input_kind(const PipelineConfig& config) {
  std::string kind = config.kind;
  if (kind == "auto") {
    const std::string ext = fs::path(config.input).extension().string();
    if (ext == ".txt") return InputKind::kText;
    if (ext == ".json") return InputKind::kAnnotationJson;
    if (ext == ".conllu" || ext == ".conll") return InputKind::kConllu;
    if (ext == ".csv") return InputKind::kTableCsv;
    fail(1, "MalformedInput", "cannot infer input kind from '" + ext + "'; pass --kind");
  }
  if (kind == "text") return InputKind::kText;
  if (kind == "annotation-json" || kind == "json") return InputKind::kAnnotationJson;
  if (kind == "conllu") return InputKind::kConllu;
  if (kind == "table-csv" || kind == "csv") return InputKind::kTableCsv;
  fail(1, "MalformedInput", "unknown input kind '" + kind + "'");
}

Lexicon load_lexicon(const PipelineConfig& config) {
  std::string path = config.lexicon;
  if (path.empty()) {
    if (const char* env = std::getenv("PROC2BPMN_LEXICON"); env != nullptr) path = env;
  }
  if (path.empty()) return Lexicon::builtin();
  if (!fs::exists(path)) fail(1, "MalformedLexicon", "lexicon file not found: " + path);
  return Lexicon::load(path);
}

// Pipes `text` to the annotator on stdin and parses its stdout as annotation JSON.
AnnotatedDocument annotate(const std::string& command, const std::string& text) {
  char stdin_path[] = "/tmp/proc2bpmn-stdin-XXXXXX";
  const int fd = mkstemp(stdin_path);
  if (fd < 0) fail(3, "AnnotatorFailure", "cannot create a temporary file");
  {
    std::ofstream tmp(stdin_path, std::ios::binary);
    tmp << text;
  }
  close(fd);

  const std::string shell = "(" + command + ") < '" + std::string(stdin_path) + "'";
  std::string output;
  FILE* pipe = popen(shell.c_str(), "r");
  if (pipe == nullptr) {
    fs::remove(stdin_path);
    fail(3, "AnnotatorFailure", "cannot start annotator: " + command);
  }
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
  const int status = pclose(pipe);
  fs::remove(stdin_path);

  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    fail(3, "AnnotatorFailure", "annotator exited with status " + std::to_string(code));
  }
  try {
    return parse_annotation_json(output);
  } catch (const Error& e) {
    fail(3, "AnnotatorFailure", "annotator produced invalid annotation JSON: " + std::string(e.what()));
  }
}

AnnotatedDocument load_document(const PipelineConfig& config, InputKind kind) {
  switch (kind) {
    case InputKind::kText:
      if (config.annotator.empty()) fail(1, "MalformedInput", "text input needs --annotator");
      return annotate(config.annotator, read_file(config.input));
    case InputKind::kAnnotationJson: return parse_annotation_json(read_file(config.input));
    case InputKind::kConllu: return parse_conllu(read_file(config.input));
    case InputKind::kTableCsv: break;
  }
  fail(1, "MalformedInput", "a process table cannot be extracted again; use compile");
}

ProcessTable extract_table(const PipelineConfig& config, const AnnotatedDocument& doc, const Lexicon& lexicon) {
  Extraction extraction = extract_process(doc, lexicon);
  if (config.debug_coref) std::cerr << coreference_report(extraction.anaphora, extraction.aliases);
  if (config.debug_svo) {
    std::cerr << extraction_report(extraction.registry, extraction.triples, extraction.conditions,
                                   extraction.termination);
  }
  return extraction.table;
}

std::string pool_name_for(const AnnotatedDocument& doc, const PipelineConfig& config) {
  if (!doc.source_id.empty()) return doc.source_id;
  return fs::path(config.input).stem().string();
}

// Returns the bytes to write; throws on any failure so nothing is written.
std::string produce(const std::string& command, const PipelineConfig& config) {
  const InputKind kind = input_kind(config);
  const Lexicon lexicon = load_lexicon(config);

  if (command == "compile") {
    if (kind != InputKind::kTableCsv) fail(1, "MalformedInput", "compile reads a process table CSV");
    return compile_table(parse_csv(read_file(config.input)), lexicon, fs::path(config.input).stem().string());
  }
  const AnnotatedDocument doc = load_document(config, kind);
  const ProcessTable table = extract_table(config, doc, lexicon);
  if (config.target == Stage::kTable) return serialize_csv(table);
  return compile_table(table, lexicon, pool_name_for(doc, config));
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  const fs::path target(path);
  const fs::path partial = target.string() + ".partial";
  {
    std::ofstream out(partial, std::ios::binary);
    out << bytes;
    if (!out) {
      out.close();
      fs::remove(partial);
      fail(1, "OutputError", "cannot write " + path);
    }
  }
  fs::rename(partial, target);
}

void add_common_options(CLI::App* sub, PipelineConfig& config, bool extracting) {
  sub->add_option("--in", config.input, "input file")->required();
  sub->add_option("--out", config.output, "output file (stdout when omitted)");
  sub->add_option("--kind", config.kind, "text | annotation-json | conllu | table-csv (default: by extension)");
  sub->add_option("--lexicon", config.lexicon, "lexicon file (default: $PROC2BPMN_LEXICON, else built in)");
  if (extracting) {
    sub->add_option("--annotator", config.annotator, "command reading text on stdin, writing annotation JSON");
    sub->add_flag("--debug-coref", config.debug_coref, "print resolutions and alias classes to stderr");
    sub->add_flag("--debug-svo", config.debug_svo, "print participants, triples and conditions to stderr");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile process narratives into BPMN 2.0"};
  app.require_subcommand(1);
  PipelineConfig config;

  CLI::App* extract = app.add_subcommand("extract", "annotations -> process table CSV");
  CLI::App* compile = app.add_subcommand("compile", "process table CSV -> BPMN");
  CLI::App* run = app.add_subcommand("run", "text or annotations -> BPMN");
  add_common_options(extract, config, true);
  add_common_options(compile, config, false);
  add_common_options(run, config, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  std::string command = app.get_subcommands().front()->get_name();
  config.target = command == "extract" ? Stage::kTable : Stage::kBpmn;

  try {
    write_output(config.output, produce(command, config));
    return 0;
  } catch (const Exit& e) {
    std::cerr << "proc2bpmn: error[" << e.kind << "]: " << e.message << "\n";
    return e.status;
  } catch (const Error& e) {
    const bool nothing_to_extract = e.kind() == "EmptyProcess" || e.kind() == "NoParticipants";
    std::cerr << "proc2bpmn: error[" << e.kind() << "]: " << e.what() << "\n";
    return nothing_to_extract ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "proc2bpmn: error[Internal]: " << e.what() << "\n";
    return 1;
  }
}
