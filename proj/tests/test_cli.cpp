#include <gtest/gtest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "rrw/cli.hpp"
#include "rrw/textio.hpp"

namespace rrw {
namespace {

using Json = nlohmann::json;
using testing::corpus_path;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

TEST(CliParseTest, PrintsCanonicalSystem) {
  const Result r = run({"parse", corpus_path("example1")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, serialize_system(testing::corpus("example1")));
  const Result j = run({"parse", corpus_path("example1"), "--json"});
  const Json doc = Json::parse(j.out);
  EXPECT_EQ(doc["command"], "parse");
  EXPECT_EQ(doc["report"]["kind"], "ocdgs");
  EXPECT_EQ(doc["report"]["components"], 3);
  EXPECT_EQ(doc["report"]["system"], r.out);
}

TEST(CliParseTest, SyntaxErrorsArePrefixedWithThePath) {
  const std::string path = temp_file("broken.rrw", "system cf g\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S => a }\n");
  const Result r = run({"parse", path});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_EQ(r.err.rfind("error: " + path + ":5:", 0), 0u) << r.err;
  EXPECT_EQ(run({"parse", "/nonexistent.rrw"}).code, cli::kInputError);
}

TEST(CliEnumTest, ExampleOne) {
  const Result r = run({"enum", corpus_path("example1"), "--mode", "t", "--max-len", "8"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('#')), "a\naa\naaaa\naaaaaaaa\n");
  EXPECT_NE(r.out.find("complete"), std::string::npos);
}

TEST(CliEnumTest, DefaultModeComesFromTheSystem) {
  EXPECT_EQ(run({"enum", corpus_path("example1"), "--max-len", "4"}).out,
            run({"enum", corpus_path("example1"), "--max-len", "4", "--mode", "t"}).out);
  const std::string path = temp_file("nomode.rrw", "system cf g\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S -> a }\n");
  EXPECT_EQ(run({"enum", path}).code, cli::kInputError);
}

TEST(CliEnumTest, JsonAndTiming) {
  const Result r = run({"enum", corpus_path("example1"), "--max-len", "4", "--json"});
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["words"], Json::array({"a", "aa", "aaaa"}));
  EXPECT_EQ(doc["complete"], true);
  EXPECT_FALSE(doc["params"].contains("mode"));
  EXPECT_EQ(doc["params"]["workspace"], 12);
  EXPECT_FALSE(doc.contains("elapsed_ms"));
  const Json timed = Json::parse(run({"enum", corpus_path("example1"), "--max-len", "4", "--json", "--timing"}).out);
  EXPECT_TRUE(timed.contains("elapsed_ms"));
  EXPECT_EQ(r.out, run({"enum", corpus_path("example1"), "--max-len", "4", "--json"}).out);
}

TEST(CliEnumTest, ReferenceEnumeratorGivesSameWords) {
  EXPECT_EQ(run({"enum", corpus_path("entry_witness"), "--mode", ">=2", "--max-len", "8"}).out,
            run({"enum", corpus_path("entry_witness"), "--mode", ">=2", "--max-len", "8", "--reference"}).out);
}

TEST(CliEnumTest, IncompleteAndInvalidBounds) {
  EXPECT_EQ(run({"enum", corpus_path("cdgs_erasing"), "--mode", "*", "--max-len", "3", "--workspace", "3"}).code,
            cli::kIncomplete);
  EXPECT_EQ(run({"enum", corpus_path("example1"), "--max-len", "9", "--workspace", "4"}).code, cli::kInputError);
  EXPECT_EQ(run({"enum", corpus_path("example1"), "--mode", "=0"}).code, cli::kInputError);
  EXPECT_EQ(run({"enum", corpus_path("example1"), "--step-budget", "0"}).code, cli::kInputError);
}

TEST(CliDeriveTest, FoundNotFoundAndTrace) {
  const Result r = run({"derive", corpus_path("example1"), "--word", "aaaa", "--trace"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("=> P3"), std::string::npos);
  EXPECT_NE(r.out.find("replay: ok"), std::string::npos);
  EXPECT_EQ(run({"derive", corpus_path("example1"), "--word", "aaa"}).code, cli::kNegative);
  EXPECT_EQ(run({"derive", corpus_path("example1"), "--word", "b"}).code, cli::kInputError);
  const Json doc = Json::parse(run({"derive", corpus_path("example1"), "--word", "aa", "--trace", "--json"}).out);
  EXPECT_EQ(doc["verdict"]["derivable"], true);
  EXPECT_EQ(doc["verdict"]["trace"].size(), 4u);
}

TEST(CliDeriveTest, CutShortSearchIsIncomplete) {
  EXPECT_EQ(run({"derive", corpus_path("cdgs_erasing"), "--mode", "*", "--word", "aab", "--workspace", "3"}).code,
            cli::kIncomplete);
}

TEST(CliTransformTest, WritesFileAndReport) {
  const std::string path = ::testing::TempDir() + "frc.rrw";
  const Result r = run({"transform", corpus_path("example1"), "--construction", "ord-to-frc", "--mode", "t", "-o", path});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("construction: ord-to-frc"), std::string::npos);
  const System out = load_system(path);
  EXPECT_EQ(out.kind, SystemKind::frccdgs);
  const Result stdout_form = run({"transform", corpus_path("example1"), "--construction", "ord-to-frc", "--mode", "t"});
  EXPECT_EQ(stdout_form.out.rfind("# construction: ord-to-frc", 0), 0u);
  EXPECT_EQ(parse_system(stdout_form.out), out);
  EXPECT_EQ(run({"equiv", corpus_path("example1"), path, "--mode", "t", "--max-len", "8"}).code, cli::kOk);
}

TEST(CliTransformTest, JsonReport) {
  const Json doc = Json::parse(
      run({"transform", corpus_path("gc_powers"), "--construction", "gc-to-ocdgs", "--mode", "=2", "--json"}).out);
  EXPECT_EQ(doc["report"]["components"], 11);
  EXPECT_EQ(doc["report"]["output_kind"], "ocdgs");
  EXPECT_EQ(doc["report"]["output_erasing"], true);
  EXPECT_TRUE(doc["report"]["system"].is_string());
}

TEST(CliTransformTest, RejectionsExitTwo) {
  for (const char* mode : {">=2", "=2"}) {
    const Result r = run({"transform", corpus_path("frccd_mix"), "--construction", "frccd-merge", "--mode", mode});
    EXPECT_EQ(r.code, cli::kInputError) << mode;
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  }
  EXPECT_EQ(run({"transform", corpus_path("pcd_prio"), "--construction", "pcd-to-cdfrc", "--mode", "=2"}).code,
            cli::kInputError);
  EXPECT_EQ(run({"transform", corpus_path("example1"), "--construction", "nope"}).code, cli::kInputError);
  EXPECT_EQ(run({"transform", corpus_path("example1"), "--construction", "gc-to-ocdgs", "--mode", "=2"}).code,
            cli::kInputError);
}

TEST(CliEquivTest, DifferentLanguagesGiveCounterexample) {
  const Result r = run({"equiv", corpus_path("example1"), corpus_path("gc_powers"), "--mode", "*", "--mode-b", "t",
                        "--max-len", "4"});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_NE(r.out.find("counterexample: aaa (first only)"), std::string::npos) << r.out;
  const Json doc = Json::parse(run({"equiv", corpus_path("example1"), corpus_path("gc_powers"), "--mode", "t",
                                    "--max-len", "8", "--json"}).out);
  EXPECT_EQ(doc["verdict"]["equal"], true);
}

TEST(CliEquivTest, IncompleteExitsThree) {
  EXPECT_EQ(run({"equiv", corpus_path("cdgs_erasing"), corpus_path("cdgs_erasing"), "--mode", "*", "--max-len", "3",
                 "--workspace", "3"}).code,
            cli::kIncomplete);
}

TEST(CliNonemptyTest, ListsUsefulNonterminals) {
  const Result r = run({"nonempty", corpus_path("example1")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("P2: useful { B }"), std::string::npos) << r.out;
  const Json doc = Json::parse(run({"nonempty", corpus_path("example1"), "--json"}).out);
  EXPECT_EQ(doc["report"]["start_useful"], true);
}

TEST(CliUsageTest, HelpAndErrors) {
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({}).code, cli::kInputError);
  EXPECT_EQ(run({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run({"enum"}).code, cli::kInputError);
  EXPECT_EQ(run({"enum", corpus_path("example1"), "--max-len", "x"}).code, cli::kInputError);
}

TEST(CliUsageTest, ColorOnlyWhenRequested) {
  std::ostringstream out, err;
  cli::run({"enum", "/nonexistent.rrw"}, out, err, true);
  EXPECT_NE(err.str().find("\033["), std::string::npos);
  EXPECT_EQ(run({"enum", "/nonexistent.rrw"}).err.find("\033["), std::string::npos);
}

}  // namespace
}  // namespace rrw
