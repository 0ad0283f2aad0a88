#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "rrw/constructions.hpp"
#include "rrw/engine.hpp"
#include "rrw/textio.hpp"

namespace rrw {
namespace {

/// Naive oracle over single-character symbols: every rule rewrites every
/// occurrence of its lhs. Only for unregulated components.
struct CharRule {
  char lhs;
  std::string rhs;
};

std::set<std::string> oracle_step(const std::vector<CharRule>& rules, const std::string& f) {
  std::set<std::string> out;
  for (const auto& r : rules)
    for (std::size_t p = 0; p < f.size(); ++p)
      if (f[p] == r.lhs) out.insert(f.substr(0, p) + r.rhs + f.substr(p + 1));
  return out;
}

std::set<std::string> oracle_exactly(const std::vector<CharRule>& rules, const std::string& f, int k) {
  std::set<std::string> layer{f};
  for (int i = 0; i < k; ++i) {
    std::set<std::string> next;
    for (const auto& g : layer) {
      auto s = oracle_step(rules, g);
      next.insert(s.begin(), s.end());
    }
    layer = std::move(next);
  }
  return layer;
}

std::set<std::string> rendered(const Engine& e, const std::vector<Form>& forms) {
  std::set<std::string> out;
  for (const auto& f : forms) out.insert(e.render(f));
  return out;
}

class ExampleOne : public ::testing::Test {
 protected:
  ExampleOne() : engine_(testing::corpus("example1")) {}
  Form form(const char* text) const { return engine_.parse_form(text); }
  std::set<std::string> apply(std::size_t c, const char* f, Mode m) const {
    return rendered(engine_, engine_.mode_apply(c, form(f), m, bounds_).forms);
  }
  Engine engine_;
  StepBounds bounds_;
};

TEST_F(ExampleOne, OrderedApplicabilityInComponentTwo) {
  EXPECT_FALSE(engine_.rule_applicable(1, form("BC"), 1));
  EXPECT_TRUE(engine_.rule_applicable(1, form("BC"), 0));
  EXPECT_TRUE(engine_.rule_applicable(1, form("B"), 1));
  EXPECT_THROW(engine_.rule_applicable(1, form("B"), 7), IndexError);
  EXPECT_THROW(engine_.rule_applicable(9, form("B"), 0), IndexError);
}

TEST_F(ExampleOne, SuccessorsInComponentTwoOnBC) {
  const auto succ = engine_.component_successors(1, form("BC"));
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(engine_.render(succ[0].form), "BC");
  EXPECT_EQ(succ[0].via.rule, 0u);
  EXPECT_EQ(succ[0].via.position, 1u);
}

TEST_F(ExampleOne, ComponentOneOnAAMatchesOracle) {
  const std::vector<CharRule> g1 = {{'A', "B"}, {'A', "C"}};
  std::set<std::string> got;
  for (const auto& s : engine_.component_successors(0, form("AA")))
    got.insert(render_word(engine_.to_word(s.form)));
  EXPECT_EQ(got, oracle_step(g1, "AA"));
  EXPECT_EQ(got, (std::set<std::string>{"BA", "AB", "CA", "AC"}));

  std::set<std::string> two;
  for (const auto& f : engine_.mode_apply(0, form("AA"), Mode::eq(2), bounds_).forms)
    two.insert(render_word(engine_.to_word(f)));
  EXPECT_EQ(two, oracle_exactly(g1, "AA", 2));
  EXPECT_EQ(two, (std::set<std::string>{"BB", "BC", "CB", "CC"}));
}

TEST_F(ExampleOne, NoSuccessorsOnTerminalForms) {
  for (std::size_t c = 0; c < 3; ++c) EXPECT_TRUE(engine_.component_successors(c, form("aa")).empty());
}

TEST_F(ExampleOne, TerminatingModeOfComponentTwo) {
  EXPECT_EQ(apply(1, "B", Mode::t()), (std::set<std::string>{"AA"}));
  EXPECT_TRUE(apply(1, "BC", Mode::t()).empty());
  EXPECT_EQ(apply(0, "A", Mode::t()), (std::set<std::string>{"B", "C"}));
}

TEST_F(ExampleOne, SystemSuccessorsOnStart) {
  const auto r = engine_.system_successors(form("A"), Mode::t(), bounds_);
  std::set<std::pair<std::size_t, std::string>> got;
  for (const auto& s : r.successors) got.insert({s.component, engine_.render(s.form)});
  EXPECT_EQ(got, (std::set<std::pair<std::size_t, std::string>>{{0, "B"}, {0, "C"}}));
}

TEST_F(ExampleOne, LanguageIsPowersOfTwo) {
  StepBounds b;
  b.workspace = 16;
  const BoundedLanguage lang = engine_.enumerate_language(Mode::t(), 16, b);
  EXPECT_TRUE(lang.complete);
  EXPECT_EQ(lang.words, testing::words({"a", "aa", "aaaa", "aaaaaaaa", "aaaaaaaaaaaaaaaa"}));
  EXPECT_TRUE(lang.contains(testing::word("aaaa")));
  EXPECT_FALSE(lang.contains(testing::word("aaa")));
  EXPECT_THROW(engine_.enumerate_language(Mode::t(), 17, b), Error);
}

TEST_F(ExampleOne, DerivationOfFourAs) {
  const auto trace = engine_.find_derivation(Mode::t(), testing::word("aaaa"), bounds_);
  ASSERT_TRUE(trace.has_value());
  std::vector<std::string> comps;
  std::vector<std::string> forms;
  for (const auto& st : trace->steps) {
    comps.push_back(st.component);
    forms.push_back(render_word(engine_.to_word(st.form)));
  }
  EXPECT_EQ(comps, (std::vector<std::string>{"P1", "P2", "P1", "P2", "P1", "P3"}));
  EXPECT_EQ(forms, (std::vector<std::string>{"B", "AA", "BB", "AAAA", "CCCC", "aaaa"}));
  EXPECT_TRUE(engine_.replay(*trace, Mode::t()));

  DerivationTrace forged = *trace;
  forged.steps[1].form = form("A A A");
  EXPECT_FALSE(engine_.replay(forged, Mode::t()));
  EXPECT_FALSE(engine_.find_derivation(Mode::t(), testing::word("aaa"), bounds_).has_value());
}

TEST(EngineTest, SingleRuleSystem) {
  const Engine e(parse_system("system cdgs one\nnonterminals: S\nterminals: a\nstart: S\ncomponent P { S -> a }\n"));
  StepBounds b;
  const BoundedLanguage lang = e.enumerate_language(Mode::star(), 3, b);
  EXPECT_TRUE(lang.complete);
  EXPECT_EQ(lang.words, testing::words({"a"}));
  const auto trace = e.find_derivation(Mode::star(), testing::word("a"), b);
  ASSERT_TRUE(trace.has_value());
  EXPECT_EQ(trace->steps.size(), 1u);
  EXPECT_EQ(trace->steps[0].applications.size(), 1u);
}

TEST(EngineTest, RuleApplicabilityWithoutLhsAndUnderForbid) {
  const Engine e(parse_system(
      "system frccdgs g\nnonterminals: A B\nterminals: a\nstart: A\n"
      "component P { A -> a forbid { B }\n B -> a }\n"));
  EXPECT_FALSE(e.rule_applicable(0, e.parse_form("aa"), 0));
  EXPECT_FALSE(e.rule_applicable(0, e.parse_form("AB"), 0));
  EXPECT_TRUE(e.rule_applicable(0, e.parse_form("Aa"), 0));
}

TEST(EngineTest, EntryForbidBlocksComponent) {
  const Engine e(parse_system(
      "system entry-cdgs g\nnonterminals: S B\nterminals: a\nstart: S\n"
      "component P entry forbid { B } { S -> a }\ncomponent Q { B -> a }\n"));
  StepBounds b;
  EXPECT_FALSE(e.entry_allows(0, e.parse_form("SB")));
  EXPECT_TRUE(e.entry_allows(0, e.parse_form("S")));
  for (const auto& s : e.system_successors(e.parse_form("SB"), Mode::star(), b).successors)
    EXPECT_NE(s.component, 0u);
}

TEST(EngineTest, FailComponentOutranksItsOriginal) {
  const System witness = testing::corpus("entry_witness");
  const ConstructionResult r = cdfrc_to_pcd(witness, Mode::ge(2));
  const Engine e(r.system);
  StepBounds b;
  const auto res = e.system_successors(e.parse_form("AB"), Mode::ge(2), b);
  ASSERT_FALSE(res.successors.empty());
  for (const auto& s : res.successors) EXPECT_NE(s.component, 0u);
  bool from_p1 = false;
  for (const auto& s : e.system_successors(e.parse_form("AA"), Mode::ge(2), b).successors)
    from_p1 |= s.component == 0;
  EXPECT_TRUE(from_p1);
}

TEST(EngineTest, PriorityCorpusSystem) {
  const Engine e(testing::corpus("pcd_prio"));
  StepBounds b;
  std::set<std::size_t> comps;
  for (const auto& s : e.system_successors(e.parse_form("aBC"), Mode::star(), b).successors)
    comps.insert(s.component);
  EXPECT_EQ(comps, (std::set<std::size_t>{0}));
}

class GcSteps : public ::testing::Test {
 protected:
  GcSteps()
      : engine_(parse_system("system gc g\nnonterminals: A B\nterminals: a\nstart: A\n"
                             "init-labels: l1\nfinal-labels: l2\ncomponent rules {\n"
                             "  l1: A -> a success { l2 } failure { l3 }\n"
                             "  l2: B -> a success { l2 } failure { }\n"
                             "  l3: A -> A success { l1 } failure { l1 }\n}\n")) {}
  Engine engine_;
};

TEST_F(GcSteps, SuccessBranch) {
  const auto next = engine_.gc_successors({engine_.parse_form("A"), 0});
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(engine_.render(next[0].form), "a");
  EXPECT_EQ(next[0].label, 1u);
}

TEST_F(GcSteps, FailureBranchKeepsTheForm) {
  const auto next = engine_.gc_successors({engine_.parse_form("B"), 0});
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(engine_.render(next[0].form), "B");
  EXPECT_EQ(next[0].label, 2u);
}

TEST_F(GcSteps, EmptyFailureFieldIsStuck) {
  EXPECT_TRUE(engine_.gc_successors({engine_.parse_form("A"), 1}).empty());
  EXPECT_THROW(engine_.gc_successors({engine_.parse_form("A"), 9}), UnknownLabel);
}

TEST(EngineTest, GcPowersOfTwo) {
  const Engine e(testing::corpus("gc_powers"));
  StepBounds b;
  const BoundedLanguage lang = e.enumerate_language(Mode::t(), 8, b);
  EXPECT_TRUE(lang.complete);
  EXPECT_EQ(lang.words, testing::words({"a", "aa", "aaaa", "aaaaaaaa"}));
}

TEST(EngineTest, EntryWitnessIsPowersOfTwoInEveryGeMode) {
  const Engine e(testing::corpus("entry_witness"));
  StepBounds b;
  b.workspace = 16;
  for (unsigned k = 1; k <= 3; ++k) {
    const BoundedLanguage lang = e.enumerate_language(Mode::ge(k), 16, b);
    EXPECT_TRUE(lang.complete) << k;
    EXPECT_EQ(lang.words, testing::words({"a", "aa", "aaaa", "aaaaaaaa", "aaaaaaaaaaaaaaaa"})) << k;
  }
}

TEST(EngineTest, WorkspaceTruncationIsReported) {
  const Engine e(testing::corpus("cdgs_erasing"));
  StepBounds b;
  b.workspace = 3;
  const BoundedLanguage lang = e.enumerate_language(Mode::star(), 3, b);
  EXPECT_FALSE(lang.complete);
  EXPECT_TRUE(lang.truncated);
}

TEST(EngineTest, StepBudgetIsReported) {
  const Engine e(testing::corpus("example1"));
  StepBounds b;
  b.workspace = 16;
  b.step_budget = 10;
  const BoundedLanguage lang = e.enumerate_language(Mode::t(), 16, b);
  EXPECT_FALSE(lang.complete);
  EXPECT_TRUE(lang.budget_exceeded);
}

TEST(EngineTest, NonErasingSystemsAreCompleteAtWorkspaceEqualToMaxLen) {
  for (const auto& stem : testing::corpus_stems()) {
    const System s = testing::corpus(stem);
    if (s.has_erasing_rule() || s.kind == SystemKind::gc) continue;
    const Engine e(s);
    StepBounds b;
    b.workspace = 7;
    for (Mode m : {Mode::t(), Mode::star(), Mode::eq(2), Mode::ge(2)})
      EXPECT_TRUE(e.enumerate_language(m, 7, b).complete) << stem << " " << m.str();
  }
}

TEST(EngineTest, ParseFormSplitsUnknownTokens) {
  const Engine e(testing::corpus("example1"));
  EXPECT_EQ(e.parse_form("BC"), e.parse_form("B C"));
  EXPECT_THROW(e.parse_form("BZ"), Error);
  EXPECT_EQ(e.render(e.parse_form("")), "eps");
}

}  // namespace
}  // namespace rrw
