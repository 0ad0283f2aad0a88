#pragma once

// Shared helpers for the construction sources.

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rrw/constructions.hpp"

namespace rrw::detail {

inline Rule make_rule(std::string lhs, Word rhs, SymbolSet forbid = {}, SymbolSet permit = {}) {
  Rule r;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.forbid = std::move(forbid);
  r.permit = std::move(permit);
  return r;
}

/// Rules of one component with structural deduplication and order pairs.
class ComponentBuilder {
 public:
  explicit ComponentBuilder(std::string name) { comp_.name = std::move(name); }

  std::size_t add(Rule r) {
    for (std::size_t i = 0; i < comp_.rules.size(); ++i) {
      const Rule& o = comp_.rules[i];
      if (o.lhs == r.lhs && o.rhs == r.rhs && o.forbid == r.forbid && o.permit == r.permit)
        return i;
    }
    comp_.rules.push_back(std::move(r));
    return comp_.rules.size() - 1;
  }
  std::size_t append(Rule r) {
    comp_.rules.push_back(std::move(r));
    return comp_.rules.size() - 1;
  }
  void greater(std::size_t g, std::size_t l) { pairs_.insert({g, l}); }
  void greater(const std::vector<std::size_t>& gs, const std::vector<std::size_t>& ls) {
    for (auto g : gs)
      for (auto l : ls) greater(g, l);
  }
  std::size_t size() const { return comp_.rules.size(); }
  Rule& rule(std::size_t i) { return comp_.rules[i]; }

  /// Assigns the missing labels r1, r2, ... avoiding the labels already used.
  Component build() {
    std::set<std::string> used;
    for (const auto& r : comp_.rules)
      if (!r.label.empty()) used.insert(r.label);
    std::size_t next = 1;
    for (auto& r : comp_.rules) {
      if (!r.label.empty()) continue;
      while (used.contains("r" + std::to_string(next))) ++next;
      r.label = "r" + std::to_string(next++);
    }
    comp_.order = StrictOrder::close(comp_.rules.size(), pairs_);
    return comp_;
  }

 private:
  Component comp_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

inline void require_kind(const System& s, std::initializer_list<SystemKind> kinds,
                         const std::string& construction) {
  for (SystemKind k : kinds)
    if (s.kind == k) return;
  throw KindError(construction + ": unsupported input kind " + std::string(kind_name(s.kind)));
}

inline SymbolSet lhs_set(const Component& c) {
  SymbolSet out;
  for (const auto& r : c.rules) out.insert(r.lhs);
  return out;
}

inline SymbolSet unite(SymbolSet a, const SymbolSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

inline SymbolSet minus(SymbolSet a, const SymbolSet& b) {
  for (const auto& x : b) a.erase(x);
  return a;
}

inline ConstructionReport make_report(std::string name, std::string input_mode,
                                      std::string output_mode) {
  ConstructionReport r;
  r.construction = std::move(name);
  r.input_mode = std::move(input_mode);
  r.output_mode = std::move(output_mode);
  return r;
}

/// Output skeleton: same terminals, input nonterminals, given kind and name.
inline System derive_skeleton(const System& in, SystemKind kind, const std::string& suffix) {
  System out;
  out.kind = kind;
  out.name = in.name + "_" + suffix;
  out.nonterminals = in.nonterminals;
  out.terminals = in.terminals;
  out.start = in.start;
  return out;
}

/// Appends the issued fresh names as nonterminals, fills the report counters
/// and validates the output.
ConstructionResult finish(System out, const System& in, const FreshNames& fresh,
                          ConstructionReport report);

/// Throws ModeError unless `mode` satisfies `ok`.
void require_mode(bool ok, const std::string& construction, Mode mode);

}  // namespace rrw::detail
