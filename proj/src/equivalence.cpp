#include <algorithm>
#include <sstream>

#include "rrw/equivalence.hpp"

namespace rrw {

namespace {

std::vector<Word> difference(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), shortlex_less);
  if (out.size() > EquivVerdict::kMaxDifferences) out.resize(EquivVerdict::kMaxDifferences);
  return out;
}

void print_words(std::ostream& out, const char* title, const std::vector<Word>& words) {
  out << title << ":";
  for (const auto& w : words) out << ' ' << render_word(w);
  out << '\n';
}

}  // namespace

std::string EquivVerdict::str() const {
  std::ostringstream out;
  out << (equal ? "equal" : "different") << " up to length " << max_len << " (modes " << mode_a
      << " / " << mode_b << ", workspace " << workspace << ")\n";
  if (!complete_a) out << "first enumeration incomplete\n";
  if (!complete_b) out << "second enumeration incomplete\n";
  if (!only_in_a.empty()) print_words(out, "only in first", only_in_a);
  if (!only_in_b.empty()) print_words(out, "only in second", only_in_b);
  return out.str();
}

EquivVerdict bounded_equiv(const System& a, Mode mode_a, const System& b, Mode mode_b,
                           std::size_t max_len, const StepBounds& bounds) {
  const BoundedLanguage la = Engine(a).enumerate_language(mode_a, max_len, bounds);
  const BoundedLanguage lb = Engine(b).enumerate_language(mode_b, max_len, bounds);
  EquivVerdict v;
  v.only_in_a = difference(la.words, lb.words);
  v.only_in_b = difference(lb.words, la.words);
  v.complete_a = la.complete;
  v.complete_b = lb.complete;
  v.equal = v.complete_a && v.complete_b && v.only_in_a.empty() && v.only_in_b.empty();
  v.mode_a = mode_a.str();
  v.mode_b = mode_b.str();
  v.max_len = max_len;
  v.workspace = bounds.workspace;
  return v;
}

SymbolSet useful_nonterminals(const std::vector<Rule>& rules, const SymbolSet& terminals) {
  SymbolSet useful;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& r : rules) {
      if (useful.contains(r.lhs)) continue;
      const bool ok = std::all_of(r.rhs.begin(), r.rhs.end(), [&](const std::string& x) {
        return terminals.contains(x) || useful.contains(x);
      });
      if (ok) grew = useful.insert(r.lhs).second;
    }
  }
  return useful;
}

SymbolSet useful_nonterminals(const Component& component) {
  SymbolSet lhs, terminals;
  for (const auto& r : component.rules) lhs.insert(r.lhs);
  for (const auto& r : component.rules)
    for (const auto& x : r.rhs)
      if (!lhs.contains(x)) terminals.insert(x);
  return useful_nonterminals(component.rules, terminals);
}

}  // namespace rrw
