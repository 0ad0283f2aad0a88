#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "rrw/grammar.hpp"
#include "rrw/textio.hpp"

namespace rrw {
namespace {

using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

TEST(StrictOrderTest, ClosesChainTransitively) {
  const StrictOrder o = StrictOrder::close(4, {{1, 2}, {2, 3}});
  EXPECT_EQ(o.pairs(), (Pairs{{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_TRUE(o.greater(1, 3));
  EXPECT_FALSE(o.greater(3, 1));
  EXPECT_EQ(o.longest_chain(), 3u);
  EXPECT_EQ(o.above(3), (std::vector<std::size_t>{1, 2}));
}

TEST(StrictOrderTest, EmptyOrder) {
  const StrictOrder o = StrictOrder::close(3, {});
  EXPECT_TRUE(o.empty());
  EXPECT_TRUE(o.above(0).empty());
  EXPECT_EQ(o, StrictOrder{});
  EXPECT_EQ(o.longest_chain(), 0u);
  EXPECT_EQ(StrictOrder::close(3, {{0, 1}}).longest_chain(), 2u);
}

TEST(StrictOrderTest, RejectsCyclesAndDanglingIndices) {
  EXPECT_THROW(StrictOrder::close(3, {{1, 2}, {2, 1}}), CycleError);
  EXPECT_THROW(StrictOrder::close(2, {{0, 0}}), CycleError);
  EXPECT_THROW(StrictOrder::close(3, {{0, 1}, {1, 2}, {2, 0}}), CycleError);
  EXPECT_THROW(StrictOrder::close(2, {{0, 5}}), IndexError);
  EXPECT_EQ(close_order(4, {{1, 2}, {2, 3}}), StrictOrder::close(4, {{1, 2}, {2, 3}}));
}

TEST(StrictOrderTest, ClosureIsIdempotentOnRandomAcyclicInputs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    Pairs pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) pairs.insert({j, i});
    const StrictOrder once = StrictOrder::close(n, pairs);
    EXPECT_EQ(StrictOrder::close(n, once.pairs()), once);
    for (const auto& [g, l] : once.pairs()) {
      EXPECT_NE(g, l);
      EXPECT_FALSE(once.greater(l, g));
      for (std::size_t x = 0; x < n; ++x)
        if (once.greater(l, x)) {
          EXPECT_TRUE(once.greater(g, x));
        }
    }
  }
}

TEST(ModeTest, ParsesAndPrints) {
  for (const char* text : {"t", "*", "=1", "=3", "<=2", ">=4"})
    EXPECT_EQ(Mode::parse(text).str(), text);
  EXPECT_EQ(Mode::parse(">=2"), Mode::ge(2));
  EXPECT_EQ(Mode::parse("<=5").k(), 5u);
  EXPECT_EQ(Mode::parse("=2").kind(), Mode::Kind::eq);
}

TEST(ModeTest, RejectsMalformedModes) {
  for (const char* text : {"", "=0", ">=0", "<=", "=x", "tt", "**", "=-1", "> =2"})
    EXPECT_THROW(Mode::parse(text), ModeError) << text;
  EXPECT_THROW(Mode::eq(0), ModeError);
}

TEST(WordTest, ShortlexAndRendering) {
  using testing::word;
  EXPECT_TRUE(shortlex_less(word("b"), word("aa")));
  EXPECT_TRUE(shortlex_less(word("ab"), word("ba")));
  EXPECT_TRUE(shortlex_less(word("eps"), word("a")));
  EXPECT_FALSE(shortlex_less(word("ab"), word("ab")));
  EXPECT_EQ(render_word({}), "eps");
  EXPECT_EQ(render_word(word("aab")), "aab");
  EXPECT_EQ(render_word({"a", "bc"}), "a bc");
}

TEST(KindTest, NamesRoundTrip) {
  for (SystemKind k : {SystemKind::cf, SystemKind::ordered, SystemKind::cdgs, SystemKind::ocdgs,
                       SystemKind::rccdgs, SystemKind::frccdgs, SystemKind::gc,
                       SystemKind::entry_cdgs, SystemKind::pcdgs})
    EXPECT_EQ(parse_kind(kind_name(k)), k);
  EXPECT_FALSE(parse_kind("grammar").has_value());
  EXPECT_EQ(kind_name(SystemKind::entry_cdgs), "entry-cdgs");
}

TEST(ValidateTest, CorpusSystemsAreValid) {
  for (const auto& stem : testing::corpus_stems()) {
    const System s = testing::corpus(stem);
    EXPECT_TRUE(validate(s).ok()) << stem << ": " << validate(s).str();
  }
}

TEST(ValidateTest, ExampleOneStructure) {
  const System s = testing::corpus("example1");
  EXPECT_EQ(s.kind, SystemKind::ocdgs);
  EXPECT_EQ(s.components.size(), 3u);
  EXPECT_EQ(s.components[1].rules[0].lhs, "C");
  EXPECT_EQ(s.all_rules().size(), 6u);
  EXPECT_EQ(s.all_rules()[2], &s.components[1].rules[0]);
  EXPECT_TRUE(s.components[1].order.greater(0, 1));
  EXPECT_EQ(s.components[1].rule_index("r2"), 1u);
}

System minimal_cf() {
  System s;
  s.kind = SystemKind::cf;
  s.name = "m";
  s.nonterminals = {"S"};
  s.terminals = {"a"};
  s.start = "S";
  Component c;
  c.name = "G";
  c.rules.push_back(Rule{"S", {"a"}, "r1", {}, {}});
  s.components.push_back(c);
  return s;
}

TEST(ValidateTest, ReportsAlphabetOverlap) {
  System s = minimal_cf();
  s.terminals.push_back("S");
  EXPECT_TRUE(validate(s).has("alphabet-overlap"));
}

TEST(ValidateTest, ReportsRandomContextOverlap) {
  System s = minimal_cf();
  s.kind = SystemKind::rccdgs;
  s.nonterminals.push_back("B");
  s.components[0].rules[0].permit = {"B"};
  s.components[0].rules[0].forbid = {"B"};
  EXPECT_TRUE(validate(s).has("rc-overlap"));
}

TEST(ValidateTest, ReportsErasingFlagAndStart) {
  System s = minimal_cf();
  s.non_erasing = true;
  s.components[0].rules.push_back(Rule{"S", {}, "r2", {}, {}});
  EXPECT_TRUE(validate(s).has("erasing-flag"));
  s.start = "X";
  EXPECT_TRUE(validate(s).has("start-invalid"));
  EXPECT_GE(validate(s).violations.size(), 2u);
}

TEST(ValidateTest, ReportsRegulationMismatch) {
  System s = minimal_cf();
  s.nonterminals.push_back("B");
  s.components[0].rules[0].forbid = {"B"};
  EXPECT_TRUE(validate(s).has("regulation-mismatch"));
  System f = minimal_cf();
  f.kind = SystemKind::frccdgs;
  f.nonterminals.push_back("B");
  f.components[0].rules[0].permit = {"B"};
  EXPECT_TRUE(validate(f).has("regulation-mismatch"));
}

TEST(ValidateTest, ReportsEntryMisuseAndEmptyComponents) {
  System s = minimal_cf();
  s.kind = SystemKind::cdgs;
  s.components[0].entry = RcCondition{};
  EXPECT_TRUE(validate(s).has("entry-misuse"));
  System e = minimal_cf();
  e.kind = SystemKind::cdgs;
  e.components.push_back(Component{"P2", {}, {}, {}});
  EXPECT_TRUE(validate(e).has("empty-component"));
}

TEST(ValidateTest, ReportsUndeclaredSymbolsAndDuplicateLabels) {
  System s = minimal_cf();
  s.components[0].rules[0].rhs = {"z"};
  EXPECT_TRUE(validate(s).has("undeclared-symbol"));
  System d = minimal_cf();
  d.components[0].rules.push_back(Rule{"S", {"a", "a"}, "r1", {}, {}});
  EXPECT_TRUE(validate(d).has("label-duplicate"));
}

TEST(ValidateTest, ReportsUnknownGcLabels) {
  System s = testing::corpus("gc_powers");
  s.gc_rules[0].success.push_back("l9");
  EXPECT_FALSE(validate(s).ok());
}

TEST(ValidateTest, ForcingPermitsEmptyPreservesValidity) {
  const System rc = testing::corpus("rccd_permit");
  System frc = rc;
  frc.kind = SystemKind::frccdgs;
  for (auto& c : frc.components)
    for (auto& r : c.rules) r.permit.clear();
  EXPECT_EQ(validate(rc).ok(), validate(frc).ok());
}

TEST(ValidateTest, ClearingPermitsRemovesPermitForbidOverlap) {
  const System rc = testing::corpus("rccd_permit");
  System bad = rc;
  bad.components[0].rules[1].forbid = {"B"};
  System bad_frc = bad;
  bad_frc.kind = SystemKind::frccdgs;
  for (auto& c : bad_frc.components)
    for (auto& r : c.rules) r.permit.clear();
  EXPECT_FALSE(validate(bad).ok());
  EXPECT_TRUE(validate(bad_frc).ok());
}

}  // namespace
}  // namespace rrw
