// Reference enumerator. Uses the grammar types only and shares no code with Engine.

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "rrw/equivalence.hpp"

namespace rrw {

namespace {

using Names = std::vector<std::string>;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Reference {
 public:
  Reference(const System& s, Mode mode, std::size_t max_len, const StepBounds& bounds)
      : s_(s), mode_(mode), max_len_(max_len), bounds_(bounds) {
    nonterminals_.insert(s.nonterminals.begin(), s.nonterminals.end());
    compute_yields();
  }

  BoundedLanguage run() {
    BoundedLanguage out;
    out.max_len = max_len_;
    if (s_.kind == SystemKind::gc) run_gc();
    else run_cd();
    out.words.assign(words_.begin(), words_.end());
    std::sort(out.words.begin(), out.words.end(), shortlex_less);
    out.truncated = truncated_;
    out.budget_exceeded = budget_;
    out.complete = !truncated_ && !budget_;
    out.forms_explored = seen_;
    return out;
  }

 private:
  struct Rel {
    std::set<Names> forms;
    bool over = false;  // some form exceeded the workspace
  };

  void compute_yields() {
    std::vector<const Rule*> rules;
    for (const auto& c : s_.components)
      for (const auto& r : c.rules) rules.push_back(&r);
    for (const auto& g : s_.gc_rules) rules.push_back(&g.core);
    for (const auto& a : s_.nonterminals) yield_[a] = kNone;
    for (bool changed = true; changed;) {
      changed = false;
      for (const Rule* r : rules) {
        std::size_t sum = 0;
        for (const auto& x : r->rhs) sum = add(sum, symbol_yield(x));
        if (sum < yield_[r->lhs]) {
          yield_[r->lhs] = sum;
          changed = true;
        }
      }
    }
  }

  static std::size_t add(std::size_t a, std::size_t b) { return a == kNone || b == kNone ? kNone : a + b; }

  std::size_t symbol_yield(const std::string& x) const {
    return nonterminals_.contains(x) ? yield_.at(x) : 1;
  }

  std::size_t weight(const Names& f) const {
    std::size_t sum = 0;
    for (const auto& x : f) sum = add(sum, symbol_yield(x));
    return sum;
  }

  bool terminal(const Names& f) const {
    return std::none_of(f.begin(), f.end(), [&](const std::string& x) { return nonterminals_.contains(x); });
  }

  static bool has(const Names& f, const std::string& x) { return std::find(f.begin(), f.end(), x) != f.end(); }

  bool rule_ok(const Component& c, std::size_t i, const Names& f) const {
    const Rule& r = c.rules[i];
    if (!has(f, r.lhs)) return false;
    for (const auto& x : r.permit)
      if (!has(f, x)) return false;
    for (const auto& x : r.forbid)
      if (has(f, x)) return false;
    for (std::size_t j = 0; j < c.rules.size(); ++j)
      if (c.order.greater(j, i) && has(f, c.rules[j].lhs)) return false;
    return true;
  }

  bool any_rule_ok(const Component& c, const Names& f) const {
    for (std::size_t i = 0; i < c.rules.size(); ++i)
      if (rule_ok(c, i, f)) return true;
    return false;
  }

  static Names replace(const Names& f, std::size_t pos, const Names& rhs) {
    Names g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
    g.insert(g.end(), rhs.begin(), rhs.end());
    g.insert(g.end(), f.begin() + static_cast<std::ptrdiff_t>(pos) + 1, f.end());
    return g;
  }

  /// One-step successors inside component `c`, filtered by the length limits.
  std::set<Names> step(const Component& c, const Names& f, bool prune, bool& over) {
    std::set<Names> out;
    for (std::size_t i = 0; i < c.rules.size(); ++i) {
      if (!rule_ok(c, i, f)) continue;
      for (std::size_t p = 0; p < f.size(); ++p) {
        if (f[p] != c.rules[i].lhs) continue;
        if (++applications_ > bounds_.step_budget) budget_ = true;
        Names g = replace(f, p, c.rules[i].rhs);
        if (prune && weight(g) > max_len_) continue;
        if (g.size() > bounds_.workspace) {
          over = true;
          continue;
        }
        out.insert(std::move(g));
      }
    }
    return out;
  }

  std::set<Names> next_layer(const Component& c, const std::set<Names>& layer, bool prune,
                             bool& over) {
    std::set<Names> out;
    for (const auto& f : layer) {
      if (budget_) break;
      auto s = step(c, f, prune, over);
      out.insert(s.begin(), s.end());
    }
    return out;
  }

  /// Every form reachable from `layer` in zero or more further steps.
  std::set<Names> closure(const Component& c, std::set<Names> layer, bool prune, bool& over) {
    std::set<Names> all = layer;
    std::vector<Names> todo(layer.begin(), layer.end());
    while (!todo.empty() && !budget_) {
      Names f = std::move(todo.back());
      todo.pop_back();
      for (auto& g : step(c, f, prune, over))
        if (all.insert(g).second) todo.push_back(g);
    }
    return all;
  }

  const Rel& relation(std::size_t ci, const Names& f, bool prune) {
    auto& memo = prune ? rel_pruned_ : rel_full_;
    auto key = std::make_pair(ci, f);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Component& c = s_.components[ci];
    applications_ = 0;
    Rel rel;
    const unsigned k = mode_.k();
    std::set<Names> layer{f};
    switch (mode_.kind()) {
      case Mode::Kind::eq:
        for (unsigned n = 0; n < k && !layer.empty(); ++n) layer = next_layer(c, layer, prune, rel.over);
        rel.forms = std::move(layer);
        break;
      case Mode::Kind::le:
        for (unsigned n = 0; n < k && !layer.empty(); ++n) {
          layer = next_layer(c, layer, prune, rel.over);
          rel.forms.insert(layer.begin(), layer.end());
        }
        break;
      case Mode::Kind::ge:
        for (unsigned n = 0; n < k && !layer.empty(); ++n) layer = next_layer(c, layer, prune, rel.over);
        rel.forms = closure(c, std::move(layer), prune, rel.over);
        break;
      case Mode::Kind::star:
        rel.forms = closure(c, next_layer(c, layer, prune, rel.over), prune, rel.over);
        break;
      case Mode::Kind::t: {
        auto all = closure(c, next_layer(c, layer, prune, rel.over), prune, rel.over);
        for (auto& g : all)
          if (!any_rule_ok(c, g)) rel.forms.insert(g);
        break;
      }
    }
    return memo.emplace(key, std::move(rel)).first->second;
  }

  bool entry_ok(const Component& c, const Names& f) const {
    if (!c.entry) return true;
    for (const auto& x : c.entry->permit)
      if (!has(f, x)) return false;
    for (const auto& x : c.entry->forbid)
      if (has(f, x)) return false;
    return true;
  }

  /// Whether component `ci` may start an activation on `f`.
  bool active(std::size_t ci, const Names& f) {
    if (!entry_ok(s_.components[ci], f)) return false;
    if (s_.kind != SystemKind::pcdgs) return true;
    auto key = std::make_pair(ci, f);
    if (auto it = active_.find(key); it != active_.end()) return it->second;
    bool ok = true;
    for (std::size_t j = 0; j < s_.components.size() && ok; ++j) {
      if (!s_.priority.greater(j, ci) || !active(j, f)) continue;
      const Rel& r = relation(j, f, false);
      if (!r.forms.empty()) ok = false;
      else if (r.over) truncated_ = true;
    }
    active_.emplace(key, ok);
    return ok;
  }

  void run_cd() {
    std::set<Names> visited;
    std::vector<Names> todo{{s_.start}};
    visited.insert(todo.back());
    while (!todo.empty() && !budget_) {
      Names f = std::move(todo.back());
      todo.pop_back();
      for (std::size_t ci = 0; ci < s_.components.size(); ++ci) {
        if (!active(ci, f)) continue;
        const Rel& r = relation(ci, f, true);
        if (r.over) truncated_ = true;
        for (const auto& g : r.forms) {
          if (terminal(g)) {
            if (g.size() <= max_len_) words_.insert(g);
            continue;
          }
          if (!visited.insert(g).second) continue;
          if (visited.size() > bounds_.form_budget) budget_ = true;
          todo.push_back(g);
        }
      }
    }
    seen_ = visited.size();
  }

  void run_gc() {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < s_.gc_rules.size(); ++i) index[s_.gc_rules[i].label()] = i;
    std::set<std::string> finals(s_.final_labels.begin(), s_.final_labels.end());
    std::set<std::pair<Names, std::size_t>> visited;
    std::vector<std::pair<Names, std::size_t>> todo;

    auto expand = [&](const Names& f, std::size_t label) {
      const GcRule& g = s_.gc_rules[label];
      std::vector<std::pair<Names, const std::vector<std::string>*>> next;
      for (std::size_t p = 0; p < f.size(); ++p)
        if (f[p] == g.core.lhs) next.emplace_back(replace(f, p, g.core.rhs), &g.success);
      if (next.empty()) next.emplace_back(f, &g.failure);
      for (auto& [h, targets] : next) {
        if (weight(h) > max_len_) continue;
        if (h.size() > bounds_.workspace) {
          truncated_ = true;
          continue;
        }
        for (const auto& l : *targets) {
          if (finals.contains(l) && terminal(h)) words_.insert(h);
          if (visited.insert({h, index.at(l)}).second) todo.emplace_back(h, index.at(l));
        }
      }
      if (visited.size() > bounds_.form_budget) budget_ = true;
    };

    for (const auto& l : s_.init_labels) expand({s_.start}, index.at(l));
    while (!todo.empty() && !budget_) {
      auto [f, label] = std::move(todo.back());
      todo.pop_back();
      expand(f, label);
    }
    seen_ = visited.size();
  }

  const System& s_;
  Mode mode_;
  std::size_t max_len_;
  StepBounds bounds_;
  std::set<std::string> nonterminals_;
  std::map<std::string, std::size_t> yield_;
  std::map<std::pair<std::size_t, Names>, Rel> rel_pruned_, rel_full_;
  std::map<std::pair<std::size_t, Names>, bool> active_;
  std::set<Names> words_;
  std::size_t applications_ = 0;
  std::size_t seen_ = 0;
  bool truncated_ = false;
  bool budget_ = false;
};

}  // namespace

BoundedLanguage reference_enumerate(const System& system, Mode mode, std::size_t max_len,
                                    const StepBounds& bounds) {
  return Reference(system, mode, max_len, bounds).run();
}

}  // namespace rrw
