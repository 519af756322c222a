#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "proc2bpmn/annotation.hpp"
#include "support/support.hpp"

namespace fs = std::filesystem;
using namespace testing_support;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "proc2bpmn-cli-XXXXXX").string();
    path = mkdtemp(pattern.data());
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI with `args`, stderr captured to `err`.
int cli(const std::string& args, const std::string& err = "/dev/null") {
  return run(quote(PROC2BPMN_CLI) + " " + args + " 2>" + quote(err));
}

void write(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

}  // namespace

TEST_CASE("compile reproduces the golden BPMN") {
  TempDir tmp;
  CHECK(cli("compile --in " + quote(fixture("table1.csv")) + " --out " + quote(tmp / "out.bpmn")) == 0);
  CHECK(read_file(tmp / "out.bpmn") == read_file(fixture("table1.bpmn")));
}

TEST_CASE("extract reproduces the golden CSV") {
  TempDir tmp;
  CHECK(cli("extract --in " + quote(fixture("table1.annotation.json")) + " --out " + quote(tmp / "t.csv")) == 0);
  CHECK(read_file(tmp / "t.csv") == read_file(fixture("table1.csv")));
}

TEST_CASE("run equals extract then compile") {
  TempDir tmp;
  const std::string in = quote(fixture("table1.annotation.json"));
  REQUIRE(cli("run --in " + in + " --out " + quote(tmp / "run.bpmn")) == 0);
  REQUIRE(cli("extract --in " + in + " --out " + quote(tmp / "table1.csv")) == 0);
  REQUIRE(cli("compile --in " + quote(tmp / "table1.csv") + " --out " + quote(tmp / "two-step.bpmn")) == 0);
  CHECK(read_file(tmp / "run.bpmn") == read_file(tmp / "two-step.bpmn"));
  CHECK(read_file(tmp / "run.bpmn") == read_file(fixture("table1.bpmn")));
}

TEST_CASE("CoNLL-U input and explicit kinds") {
  TempDir tmp;
  const proc2bpmn::AnnotatedDocument doc =
      proc2bpmn::parse_annotation_json(read_file(fixture("table1.annotation.json")));
  write(tmp / "table1.conllu", proc2bpmn::serialize_conllu(doc));
  CHECK(cli("extract --in " + quote(tmp / "table1.conllu") + " --out " + quote(tmp / "a.csv")) == 0);
  CHECK(read_file(tmp / "a.csv") == read_file(fixture("table1.csv")));

  write(tmp / "doc.dat", read_file(fixture("table1.annotation.json")));
  CHECK(cli("extract --in " + quote(tmp / "doc.dat") + " --out " + quote(tmp / "b.csv")) == 1);
  CHECK(cli("extract --kind annotation-json --in " + quote(tmp / "doc.dat") + " --out " + quote(tmp / "b.csv")) == 0);
  CHECK(read_file(tmp / "b.csv") == read_file(fixture("table1.csv")));
}

TEST_CASE("input and schema errors exit 1 and write nothing") {
  TempDir tmp;
  const std::string out = tmp / "out.bpmn";
  write(tmp / "bad.csv", "Order,Task\n0,start\n");
  CHECK(cli("compile --in " + quote(tmp / "bad.csv") + " --out " + quote(out), tmp / "err") == 1);
  CHECK(read_file(tmp / "err").find("error[CsvSchemaError]") != std::string::npos);

  write(tmp / "bad.json", "{\"sentences\": [[{\"form\": \"a\"}]]}");
  CHECK(cli("run --in " + quote(tmp / "bad.json") + " --out " + quote(out), tmp / "err") == 1);
  CHECK(read_file(tmp / "err").find("error[SchemaViolation]") != std::string::npos);

  CHECK(cli("compile --in " + quote(tmp / "missing.csv") + " --out " + quote(out)) == 1);
  CHECK(cli("extract --in " + quote(fixture("table1.csv")) + " --out " + quote(out)) == 1);  // table cannot target table
  CHECK(cli("") == 1);
  CHECK(cli("compile --out " + quote(out)) == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(out + ".partial"));
}

TEST_CASE("nothing to extract exits 2") {
  TempDir tmp;
  write(tmp / "empty.json", R"({"sentences": [[
    {"form": "The", "lemma": "the", "upos": "DET", "head": 2, "deprel": "det"},
    {"form": "request", "lemma": "request", "upos": "NOUN", "head": 4, "deprel": "nsubjpass"},
    {"form": "is", "lemma": "be", "upos": "AUX", "head": 4, "deprel": "auxpass"},
    {"form": "archived", "lemma": "archive", "upos": "VERB", "head": 0, "deprel": "root"}]]})");
  CHECK(cli("extract --in " + quote(tmp / "empty.json") + " --out " + quote(tmp / "t.csv"), tmp / "err") == 2);
  CHECK(read_file(tmp / "err").find("NoParticipants") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "t.csv"));

  write(tmp / "empty.csv", "Order,Activity,Condition,Who,Terminated\n0,start,,,\n1,,,,yes\n");
  CHECK(cli("compile --in " + quote(tmp / "empty.csv") + " --out " + quote(tmp / "e.bpmn"), tmp / "err") == 2);
  CHECK(read_file(tmp / "err").find("EmptyProcess") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "e.bpmn"));
}

TEST_CASE("annotator subprocess") {
  TempDir tmp;
  write(tmp / "story.txt", "The Affairs Department follows the textbook process.\n");
  const std::string fake = "cat " + fixture("table1.annotation.json");

  SUBCASE("annotation JSON read back from stdout") {
    CHECK(cli("run --in " + quote(tmp / "story.txt") + " --annotator " + quote(fake) + " --out " +
              quote(tmp / "out.bpmn")) == 0);
    CHECK(read_file(tmp / "out.bpmn") == read_file(fixture("table1.bpmn")));
  }
  SUBCASE("the text arrives on stdin") {
    const std::string echo = "cat > " + (tmp / "seen.txt") + "; " + fake;
    CHECK(cli("extract --in " + quote(tmp / "story.txt") + " --annotator " + quote(echo) + " --out " +
              quote(tmp / "t.csv")) == 0);
    CHECK(read_file(tmp / "seen.txt") == read_file(tmp / "story.txt"));
  }
  SUBCASE("failures exit 3") {
    CHECK(cli("run --in " + quote(tmp / "story.txt") + " --annotator false --out " + quote(tmp / "o.bpmn"), tmp / "err") ==
          3);
    CHECK(read_file(tmp / "err").find("AnnotatorFailure") != std::string::npos);
    CHECK(cli("run --in " + quote(tmp / "story.txt") + " --annotator " + quote("echo nope") + " --out " +
              quote(tmp / "o.bpmn")) == 3);
    {
      std::ofstream bad(tmp / "bad.json");
      bad << R"({"sentences": [{"tokens": "x"}]})";
    }
    CHECK(cli("run --in " + quote(tmp / "story.txt") + " --annotator " + quote("cat " + (tmp / "bad.json")) +
              " --out " + quote(tmp / "o.bpmn")) == 3);
    CHECK_FALSE(fs::exists(tmp / "o.bpmn"));
  }
  SUBCASE("text without an annotator is an input error") {
    CHECK(cli("run --in " + quote(tmp / "story.txt") + " --out " + quote(tmp / "o.bpmn")) == 1);
  }
}

TEST_CASE("lexicon selection") {
  TempDir tmp;
  const std::string in = quote(fixture("table1.annotation.json"));
  write(tmp / "bad.lexicon", "verb.message\n");
  CHECK(cli("extract --in " + in + " --lexicon " + quote(tmp / "bad.lexicon") + " --out " + quote(tmp / "t.csv"),
            tmp / "err") == 1);
  CHECK(read_file(tmp / "err").find("MalformedLexicon") != std::string::npos);
  CHECK(run("PROC2BPMN_LEXICON=" + quote(tmp / "bad.lexicon") + " " + quote(PROC2BPMN_CLI) + " extract --in " + in +
            " --out " + quote(tmp / "t.csv") + " 2>/dev/null") == 1);
  CHECK(cli("extract --in " + in + " --lexicon " + quote(tmp / "none.lexicon") + " --out " + quote(tmp / "t.csv")) == 1);
  CHECK_FALSE(fs::exists(tmp / "t.csv"));

  // Without the antonym pair the alternative condition falls back to negation.
  std::string text = read_file(std::string(DATA_DIR) + "/default.lexicon");
  text.erase(text.find("antonym\treject\tapprove\n"), std::string("antonym\treject\tapprove\n").size());
  text.erase(text.find("antonym\taccept\treject\n"), std::string("antonym\taccept\treject\n").size());
  write(tmp / "plain.lexicon", text);
  CHECK(run("PROC2BPMN_LEXICON=" + quote(tmp / "plain.lexicon") + " " + quote(PROC2BPMN_CLI) + " extract --in " + in +
            " --out " + quote(tmp / "t.csv")) == 0);
  CHECK(read_file(tmp / "t.csv").find("not Affairs Director rejects request") != std::string::npos);
}

TEST_CASE("debug reports go to stderr") {
  TempDir tmp;
  CHECK(cli("extract --debug-coref --debug-svo --in " + quote(fixture("table1.annotation.json")) + " --out " +
                quote(tmp / "t.csv"),
            tmp / "err") == 0);
  const std::string err = read_file(tmp / "err");
  CHECK(err.find("[coreference]") != std::string::npos);
  CHECK(err.find("[extraction]") != std::string::npos);
  CHECK(read_file(tmp / "t.csv") == read_file(fixture("table1.csv")));
}
