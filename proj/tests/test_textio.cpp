#include <gtest/gtest.h>

#include "corpus.hpp"
#include "rrw/constructions.hpp"
#include "rrw/textio.hpp"

namespace rrw {
namespace {

const char* kExample1 = R"(system ocdgs example1
nonterminals: A B C
terminals: a
start: A
component P1 { A -> B
               A -> C }
component P2 { r1: C -> C
               r2: B -> A A
               order: r1 > r2 }
component P3 { r1: B -> B
               r2: C -> a
               order: r1 > r2 }
)";

/// Byte offset of the first occurrence of `token` in `text`.
std::size_t offset_of(const std::string& text, const std::string& token) {
  return text.find(token);
}

TEST(ParseTest, ExampleOneDocument) {
  const System s = parse_system(kExample1);
  EXPECT_EQ(s.kind, SystemKind::ocdgs);
  EXPECT_EQ(s.name, "example1");
  EXPECT_EQ(s.start, "A");
  ASSERT_EQ(s.components.size(), 3u);
  const Component& p2 = s.components[1];
  EXPECT_EQ(p2.rules[0].str(), "C -> C");
  EXPECT_EQ(p2.rules[1].str(), "B -> A A");
  EXPECT_TRUE(p2.order.greater(0, 1));
  EXPECT_EQ(p2.order.pairs().size(), 1u);
  EXPECT_EQ(s.components[0].rules[0].label, "r1");
  EXPECT_EQ(s.components[0].rules[1].label, "r2");
  System file = testing::corpus("example1");
  EXPECT_EQ(file.default_mode, Mode::t());
  file.default_mode.reset();
  EXPECT_EQ(s, file);
}

TEST(ParseTest, SelfOrderIsACycle) {
  const std::string doc = R"(system ordered g
nonterminals: S
terminals: a
start: S
component G { r1: S -> a
              order: r1 > r1 }
)";
  try {
    parse_system(doc);
    FAIL() << "expected a diagnostic";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos) << e.what();
    EXPECT_EQ(std::string(e.what()).substr(0, 2), "6:");
  }
}

TEST(ParseTest, UndeclaredSymbolNamesSymbolAndSpan) {
  const std::string doc = R"(system cf g
nonterminals: S
terminals: a
start: S
component G { S -> a zz }
)";
  try {
    parse_system(doc);
    FAIL() << "expected a ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos) << e.what();
    EXPECT_EQ(e.span().line, 5u);
    EXPECT_EQ(e.span().offset, offset_of(doc, "zz"));
    EXPECT_TRUE(e.report().has("undeclared-symbol"));
  }
}

TEST(ParseTest, SyntaxErrorsCarrySpansInsideTheToken) {
  struct Case {
    std::string doc;
    std::string token;
  };
  const std::vector<Case> cases = {
      {"system cf g\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S => a }\n", "=>"},
      {"system bogus g\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S -> a }\n", "bogus"},
      {"system cf g\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S -> a\n", ""},
      {"system cf g\nnonterminals: S\nterminals: a\nstrat: S\ncomponent G { S -> a }\n", "strat"},
  };
  for (const auto& c : cases) {
    try {
      parse_system(c.doc);
      ADD_FAILURE() << "no error for " << c.doc;
    } catch (const SyntaxError& e) {
      const SourceSpan& span = e.span();
      EXPECT_GE(span.line, 1u);
      EXPECT_LE(span.offset, c.doc.size());
      if (!c.token.empty()) {
        const std::size_t at = offset_of(c.doc, c.token);
        EXPECT_GE(span.offset, at) << e.what();
        EXPECT_LT(span.offset, at + c.token.size()) << e.what();
      }
    }
  }
}

TEST(ParseTest, CommentsAndEpsilon) {
  const System s = parse_system(
      "# leading comment\nsystem cf g  # trailing\nnonterminals: S\nterminals: a\nstart: S\n"
      "component G { S -> eps\n S -> a S }\n");
  ASSERT_EQ(s.components[0].rules.size(), 2u);
  EXPECT_TRUE(s.components[0].rules[0].erasing());
}

TEST(ParseTest, EntryConditionsAndPriorities) {
  const System e = testing::corpus("entry_witness");
  ASSERT_TRUE(e.components[0].entry.has_value());
  EXPECT_EQ(e.components[0].entry->forbid, (SymbolSet{"B", "C"}));
  EXPECT_TRUE(e.components[0].entry->permit.empty());
  const System p = testing::corpus("pcd_prio");
  EXPECT_TRUE(p.priority.greater(0, 2));
  EXPECT_FALSE(p.priority.greater(2, 0));
}

TEST(ParseTest, GcDocument) {
  const System g = testing::corpus("gc_powers");
  EXPECT_EQ(g.kind, SystemKind::gc);
  ASSERT_EQ(g.gc_rules.size(), 3u);
  EXPECT_EQ(g.gc_rules[1].label(), "l2");
  EXPECT_EQ(g.gc_rules[1].failure, (std::vector<std::string>{"l1", "l3"}));
  EXPECT_EQ(g.init_labels, (std::vector<std::string>{"l1", "l3"}));
  EXPECT_EQ(g.final_labels, (std::vector<std::string>{"l3"}));
}

TEST(SerializeTest, MinimalSystemIsShort) {
  const System s = parse_system("system cf m\nnonterminals: S\nterminals: a\nstart: S\ncomponent G { S -> a }\n");
  const std::string text = serialize_system(s);
  EXPECT_EQ(parse_system(text), s);
  EXPECT_LE(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST(SerializeTest, RoundTripOnCorpus) {
  for (const auto& stem : testing::corpus_stems()) {
    const System s = testing::corpus(stem);
    const std::string once = serialize_system(s);
    EXPECT_EQ(parse_system(once), s) << stem;
    EXPECT_EQ(serialize_system(parse_system(once)), once) << stem;
  }
}

TEST(SerializeTest, RoundTripOnConstructionOutputs) {
  const System gc = testing::corpus("gc_powers");
  const ConstructionResult r = gc_to_ocdgs(gc, Mode::eq(2));
  const std::string text = serialize_system(r.system);
  const System back = parse_system(text);
  EXPECT_EQ(back, r.system);
  for (const auto& x : r.system.nonterminals)
    EXPECT_NE(text.find(x), std::string::npos) << x;
  for (const auto& info : construction_catalog()) {
    for (const auto& stem : testing::corpus_stems()) {
      const System in = testing::corpus(stem);
      if (std::find(info.input_kinds.begin(), info.input_kinds.end(), in.kind) == info.input_kinds.end())
        continue;
      for (const auto& opt : info.samples) {
        try {
          const ConstructionResult out = run_construction(info.id, in, opt);
          EXPECT_EQ(parse_system(serialize_system(out.system)), out.system) << info.id << " " << stem;
        } catch (const Error&) {
        }
      }
    }
  }
}

TEST(LoadTest, MissingFile) {
  EXPECT_THROW(load_system("/nonexistent/none.rrw"), Error);
}

}  // namespace
}  // namespace rrw
