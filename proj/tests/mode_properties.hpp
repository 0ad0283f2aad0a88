#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "rrw/engine.hpp"

namespace rrw::testing {

struct ModeSample {
  std::string stem;
  std::size_t component = 0;
  Word form;
};

/// `count` seeded (component, form) pairs over the non-gc corpus systems. Forms
/// have 1 to 5 symbols and contain at least one nonterminal.
inline std::vector<ModeSample> mode_samples(std::size_t count, unsigned seed) {
  std::vector<System> systems;
  std::vector<std::string> stems;
  for (const auto& stem : corpus_stems()) {
    System s = corpus(stem);
    if (s.kind == SystemKind::gc) continue;
    systems.push_back(std::move(s));
    stems.push_back(stem);
  }
  std::mt19937 rng(seed);
  std::vector<ModeSample> out;
  while (out.size() < count) {
    const std::size_t si = rng() % systems.size();
    const System& s = systems[si];
    ModeSample m;
    m.stem = stems[si];
    m.component = rng() % s.components.size();
    const std::size_t len = 1 + rng() % 5;
    for (std::size_t i = 0; i < len; ++i) {
      if (rng() % 3 == 0) m.form.push_back(s.terminals[rng() % s.terminals.size()]);
      else m.form.push_back(s.nonterminals[rng() % s.nonterminals.size()]);
    }
    if (std::none_of(m.form.begin(), m.form.end(), [&](const std::string& x) { return s.is_nonterminal(x); }))
      m.form.push_back(s.nonterminals.front());
    out.push_back(std::move(m));
  }
  return out;
}

struct PropertyFailure {
  std::string property;
  std::string detail;
};

inline bool subset(const std::vector<Form>& a, const std::vector<Form>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Checks the mode algebra on one sample; returns the violated properties.
inline std::vector<PropertyFailure> check_mode_algebra(const Engine& e, const ModeSample& m,
                                                       const StepBounds& b) {
  std::vector<PropertyFailure> out;
  const Form f = e.to_form(m.form);
  const std::string where = m.stem + " component " + std::to_string(m.component) + " form " + e.render(f);
  auto apply = [&](Mode mode) { return e.mode_apply(m.component, f, mode, b); };

  std::vector<Form> singles;
  for (const auto& s : e.component_successors(m.component, f)) singles.push_back(s.form);
  std::sort(singles.begin(), singles.end());
  singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
  if (apply(Mode::eq(1)).forms != singles) out.push_back({"=1 equals single-step successors", where});

  for (unsigned k = 1; k <= 3; ++k) {
    const ModeResult eqk = apply(Mode::eq(k));
    const ModeResult gek = apply(Mode::ge(k));
    const ModeResult lek = apply(Mode::le(k));
    if (!eqk.complete() || !gek.complete() || !lek.complete()) continue;
    if (!subset(eqk.forms, gek.forms)) out.push_back({"=k within >=k", where + " k=" + std::to_string(k)});
    for (unsigned j = 1; j <= k; ++j)
      if (!subset(apply(Mode::eq(j)).forms, lek.forms))
        out.push_back({"=j within <=k", where + " j=" + std::to_string(j) + " k=" + std::to_string(k)});
    for (const auto& g : gek.forms) {
      if (g.size() > b.workspace) continue;
      for (const auto& s : e.component_successors(m.component, g)) {
        if (s.form.size() > b.workspace) continue;
        if (!std::binary_search(gek.forms.begin(), gek.forms.end(), s.form))
          out.push_back({">=k closed under one more step", where + " k=" + std::to_string(k)});
      }
    }
  }
  for (const auto& g : apply(Mode::t()).forms)
    if (!e.component_successors(m.component, g).empty())
      out.push_back({"t results have no successor", where + " result " + e.render(g)});
  return out;
}

}  // namespace rrw::testing
