#include "rrw/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace rrw {

namespace {

constexpr std::size_t kInf = Engine::kUnbounded;

std::size_t add_sat(std::size_t a, std::size_t b) { return (a == kInf || b == kInf) ? kInf : a + b; }

struct FormHash {
  std::size_t operator()(const Form& f) const noexcept { return std::hash<Form>{}(f); }
};

using FormSet = std::unordered_set<Form, FormHash>;

std::vector<Form> sorted(const FormSet& set) {
  std::vector<Form> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool BoundedLanguage::contains(const Word& w) const {
  return std::binary_search(words.begin(), words.end(), w, shortlex_less);
}

// Symbol occurrence flags for one form; regulation checks are membership tests.
struct Engine::Presence {
  explicit Presence(const Form& f, std::size_t symbols) : has(symbols, 0) {
    for (Sym s : f) has[s] = 1;
  }
  bool operator[](Sym s) const { return has[s] != 0; }
  std::vector<char> has;
};

Engine::Engine(System system) : system_(std::move(system)) {
  const ValidationReport report = validate(system_);
  if (!report.ok()) throw Error("invalid system: " + report.str());

  std::map<std::string, Sym, std::less<>> ids;
  for (const auto& n : system_.nonterminals) {
    ids.emplace(n, static_cast<Sym>(names_.size()));
    names_.push_back(n);
  }
  nonterminal_count_ = names_.size();
  for (const auto& t : system_.terminals) {
    ids.emplace(t, static_cast<Sym>(names_.size()));
    names_.push_back(t);
  }
  start_ = ids.at(system_.start);

  auto syms = [&](const auto& names) {
    std::vector<Sym> out;
    for (const auto& n : names) out.push_back(ids.at(n));
    return out;
  };
  auto compile_rule = [&](const Rule& r) {
    CRule c;
    c.lhs = ids.at(r.lhs);
    for (const auto& s : r.rhs) c.rhs.push_back(ids.at(s));
    c.permit = syms(r.permit);
    c.forbid = syms(r.forbid);
    return c;
  };

  for (std::size_t ci = 0; ci < system_.components.size(); ++ci) {
    const Component& comp = system_.components[ci];
    CComponent c;
    for (const auto& r : comp.rules) c.rules.push_back(compile_rule(r));
    for (auto [g, l] : comp.order.pairs()) c.rules[l].blockers.push_back(c.rules[g].lhs);
    for (auto& r : c.rules) {
      std::sort(r.blockers.begin(), r.blockers.end());
      r.blockers.erase(std::unique(r.blockers.begin(), r.blockers.end()), r.blockers.end());
    }
    if (comp.entry) {
      c.entry_permit = syms(comp.entry->permit);
      c.entry_forbid = syms(comp.entry->forbid);
    }
    if (system_.kind == SystemKind::pcdgs) c.greater = system_.priority.above(ci);
    components_.push_back(std::move(c));
  }

  std::map<std::string, std::size_t, std::less<>> label_index;
  for (std::size_t i = 0; i < system_.gc_rules.size(); ++i)
    label_index.emplace(system_.gc_rules[i].label(), i);
  for (const auto& g : system_.gc_rules) {
    CGcRule c{compile_rule(g.core), {}, {}};
    for (const auto& l : g.success) c.success.push_back(label_index.at(l));
    for (const auto& l : g.failure) c.failure.push_back(label_index.at(l));
    gc_rules_.push_back(std::move(c));
  }
  final_label_.assign(gc_rules_.size(), 0);
  for (const auto& l : system_.init_labels) init_labels_.push_back(label_index.at(l));
  for (const auto& l : system_.final_labels) final_label_[label_index.at(l)] = 1;

  // Minimal terminal yield of each symbol in the underlying context-free grammar.
  min_yield_.assign(names_.size(), kInf);
  for (std::size_t s = nonterminal_count_; s < names_.size(); ++s) min_yield_[s] = 1;
  std::vector<const CRule*> all;
  for (const auto& c : components_)
    for (const auto& r : c.rules) all.push_back(&r);
  for (const auto& g : gc_rules_) all.push_back(&g.rule);
  for (bool changed = true; changed;) {
    changed = false;
    for (const CRule* r : all) {
      std::size_t w = 0;
      for (Sym s : r->rhs) w = add_sat(w, min_yield_[s]);
      if (w < min_yield_[r->lhs]) {
        min_yield_[r->lhs] = w;
        changed = true;
      }
    }
  }
}

// ---------------------------------------------------------------- symbols

std::optional<Sym> Engine::symbol(std::string_view n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return static_cast<Sym>(i);
  return std::nullopt;
}

bool Engine::is_terminal_form(const Form& f) const {
  return std::all_of(f.begin(), f.end(), [&](Sym s) { return is_terminal(s); });
}

Form Engine::parse_form(std::string_view text) const {
  Form out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j == i) break;
    const std::string_view token = text.substr(i, j - i);
    if (token == "eps") {
    } else if (auto s = symbol(token)) {
      out.push_back(*s);
    } else {
      for (char ch : token) {
        auto s1 = symbol(std::string_view(&ch, 1));
        if (!s1) throw Error("unknown symbol '" + std::string(token) + "'");
        out.push_back(*s1);
      }
    }
    i = j;
  }
  return out;
}

Form Engine::to_form(const Word& w) const {
  Form out;
  for (const auto& n : w) {
    auto s = symbol(n);
    if (!s) throw Error("unknown symbol '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

Word Engine::to_word(const Form& f) const {
  Word w;
  for (Sym s : f) w.push_back(names_[s]);
  return w;
}

std::string Engine::render(const Form& f) const { return render_word(to_word(f)); }

std::size_t Engine::weight(const Form& f) const {
  std::size_t w = 0;
  for (Sym s : f) w = add_sat(w, min_yield_[s]);
  return w;
}

// ---------------------------------------------------------------- single component

bool Engine::applicable(const CRule& r, const Presence& p) const {
  if (!p[r.lhs]) return false;
  for (Sym b : r.blockers)
    if (p[b]) return false;
  for (Sym x : r.permit)
    if (!p[x]) return false;
  for (Sym x : r.forbid)
    if (p[x]) return false;
  return true;
}

bool Engine::rule_applicable(std::size_t component, const Form& form, std::size_t rule) const {
  if (component >= components_.size()) throw IndexError("component index out of range");
  const CComponent& c = components_[component];
  if (rule >= c.rules.size()) throw IndexError("rule index out of range");
  return applicable(c.rules[rule], Presence(form, names_.size()));
}

bool Engine::any_rule_applicable(std::size_t component, const Form& form) const {
  const CComponent& c = components_.at(component);
  const Presence p(form, names_.size());
  return std::any_of(c.rules.begin(), c.rules.end(),
                     [&](const CRule& r) { return applicable(r, p); });
}

Form Engine::apply_at(const Form& form, std::size_t pos, const Form& rhs) {
  Form out;
  out.reserve(form.size() + rhs.size());
  out.append(form, 0, pos);
  out.append(rhs);
  out.append(form, pos + 1, Form::npos);
  return out;
}

void Engine::successors_into(const CComponent& c, const Form& form,
                             std::vector<Successor>& out) const {
  out.clear();
  const Presence p(form, names_.size());
  for (std::size_t ri = 0; ri < c.rules.size(); ++ri) {
    const CRule& r = c.rules[ri];
    if (!applicable(r, p)) continue;
    for (std::size_t pos = 0; pos < form.size(); ++pos)
      if (form[pos] == r.lhs) out.push_back({apply_at(form, pos, r.rhs), {ri, pos}});
  }
}

std::vector<Successor> Engine::component_successors(std::size_t component,
                                                    const Form& form) const {
  if (component >= components_.size()) throw IndexError("component index out of range");
  std::vector<Successor> out;
  successors_into(components_[component], form, out);
  return out;
}

ModeResult Engine::mode_apply(std::size_t component, const Form& form, Mode mode,
                              const StepBounds& bounds) const {
  if (component >= components_.size()) throw IndexError("component index out of range");
  return apply_mode(component, form, mode, {bounds.workspace, kInf, bounds.step_budget});
}

ModeResult Engine::apply_mode(std::size_t component, const Form& form, Mode mode,
                              const Limits& limits) const {
  const CComponent& c = components_[component];
  ModeResult res;
  std::size_t steps = 0;
  std::vector<Successor> buf;

  // Expands one form; returns false once the step budget is exhausted.
  auto expand = [&](const Form& f, auto&& emit) {
    successors_into(c, f, buf);
    for (auto& s : buf) {
      if (++steps > limits.step_budget) {
        res.budget_exceeded = true;
        return false;
      }
      if (limits.weight_cap != kInf && weight(s.form) > limits.weight_cap) continue;
      if (s.form.size() > limits.workspace) {
        res.truncated = true;
        continue;
      }
      emit(std::move(s.form));
    }
    return true;
  };

  auto layers = [&](unsigned k, FormSet* collect_all) {
    FormSet layer{form};
    for (unsigned j = 1; j <= k && !layer.empty(); ++j) {
      FormSet next;
      for (const auto& f : layer)
        if (!expand(f, [&](Form g) { next.insert(std::move(g)); })) return FormSet{};
      layer = std::move(next);
      if (collect_all) collect_all->insert(layer.begin(), layer.end());
    }
    return layer;
  };

  auto closure = [&](FormSet seeds) {
    std::deque<Form> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      Form f = std::move(queue.front());
      queue.pop_front();
      const bool ok = expand(f, [&](Form g) {
        if (seeds.insert(g).second) queue.push_back(std::move(g));
      });
      if (!ok) break;
    }
    return seeds;
  };

  FormSet result;
  switch (mode.kind()) {
    case Mode::Kind::eq: result = layers(mode.k(), nullptr); break;
    case Mode::Kind::le: layers(mode.k(), &result); break;
    case Mode::Kind::ge: result = closure(layers(mode.k(), nullptr)); break;
    case Mode::Kind::star: result = closure(layers(1, nullptr)); break;
    case Mode::Kind::t: {
      for (const auto& f : closure(layers(1, nullptr)))
        if (!any_rule_applicable(component, f)) result.insert(f);
      break;
    }
  }
  res.forms = sorted(result);
  return res;
}

bool Engine::relation_nonempty(std::size_t component, const Form& form, Mode mode,
                               const Limits& limits, bool& exact) const {
  if (!any_rule_applicable(component, form)) return false;
  const unsigned k = mode.k();
  switch (mode.kind()) {
    case Mode::Kind::le:
    case Mode::Kind::star: return true;
    case Mode::Kind::eq:
    case Mode::Kind::ge: {
      if (k == 1) return true;
      // Depth-first search for any path of k applications; no workspace limit.
      std::vector<FormSet> dead(k + 1);
      std::size_t steps = 0;
      std::vector<Successor> buf;
      auto dfs = [&](auto&& self, const Form& f, unsigned depth) -> bool {
        if (depth == k) return true;
        if (dead[depth].contains(f)) return false;
        std::vector<Successor> next;
        successors_into(components_[component], f, next);
        for (const auto& s : next) {
          if (++steps > limits.step_budget) {
            exact = false;
            return false;
          }
          if (self(self, s.form, depth + 1)) return true;
        }
        dead[depth].insert(f);
        return false;
      };
      return dfs(dfs, form, 0);
    }
    case Mode::Kind::t: {
      const ModeResult r =
          apply_mode(component, form, mode, {limits.workspace, kInf, limits.step_budget});
      if (!r.forms.empty()) return true;
      if (!r.complete()) exact = false;
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------- whole system

bool Engine::entry_allows(std::size_t component, const Form& form) const {
  const CComponent& c = components_.at(component);
  if (c.entry_permit.empty() && c.entry_forbid.empty()) return true;
  const Presence p(form, names_.size());
  for (Sym x : c.entry_permit)
    if (!p[x]) return false;
  for (Sym x : c.entry_forbid)
    if (p[x]) return false;
  return true;
}

SystemStepResult Engine::system_successors(const Form& form, Mode mode,
                                           const StepBounds& bounds) const {
  if (system_.kind == SystemKind::gc) throw KindError("system_successors: use gc_successors");
  return step_system(form, mode, {bounds.workspace, kInf, bounds.step_budget});
}

SystemStepResult Engine::step_system(const Form& form, Mode mode, const Limits& limits,
                                     std::size_t skip) const {
  SystemStepResult out;
  const std::size_t n = components_.size();
  std::vector<char> act(n, 1);

  if (system_.kind == SystemKind::entry_cdgs) {
    for (std::size_t i = 0; i < n; ++i) act[i] = entry_allows(i, form);
  } else if (system_.kind == SystemKind::pcdgs && !system_.priority.empty()) {
    // Components with fewer superiors first: every superior of i precedes i.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return components_[a].greater.size() < components_[b].greater.size();
    });
    std::vector<char> superior(n, 0), nonempty(n, 0);
    for (const auto& c : components_)
      for (std::size_t j : c.greater) superior[j] = 1;
    for (std::size_t i : order) {
      bool blocked = false;
      for (std::size_t j : components_[i].greater)
        if (nonempty[j]) blocked = true;
      act[i] = !blocked;
      if (blocked || !superior[i]) continue;
      bool exact = true;
      nonempty[i] = relation_nonempty(i, form, mode, limits, exact);
      if (!exact) out.truncated = true;
      act[i] = nonempty[i];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!act[i] || i == skip) continue;
    ModeResult r = apply_mode(i, form, mode, limits);
    out.truncated |= r.truncated;
    out.budget_exceeded |= r.budget_exceeded;
    for (auto& f : r.forms) out.successors.push_back({i, std::move(f)});
  }
  return out;
}

std::vector<GcConfig> Engine::gc_successors(const GcConfig& config) const {
  if (system_.kind != SystemKind::gc) throw KindError("gc_successors requires a gc system");
  if (config.label >= gc_rules_.size()) throw UnknownLabel("label index out of range");
  const CGcRule& g = gc_rules_[config.label];
  std::vector<GcConfig> out;
  bool applied = false;
  for (std::size_t pos = 0; pos < config.form.size(); ++pos) {
    if (config.form[pos] != g.rule.lhs) continue;
    applied = true;
    const Form next = apply_at(config.form, pos, g.rule.rhs);
    for (std::size_t l : g.success) out.push_back({next, l});
  }
  if (!applied)
    for (std::size_t l : g.failure) out.push_back({config.form, l});
  return out;
}

BoundedLanguage Engine::enumerate_language(Mode mode, std::size_t max_len,
                                           const StepBounds& bounds) const {
  if (max_len > bounds.workspace) throw Error("max length exceeds the workspace bound");
  if (system_.kind == SystemKind::gc) return enumerate_gc(max_len, bounds);

  const Limits limits{bounds.workspace, max_len, bounds.step_budget};
  BoundedLanguage lang;
  lang.max_len = max_len;
  std::set<Word, decltype(&shortlex_less)> words(&shortlex_less);
  // In * and >=k modes a component reactivated on its own result only reaches
  // forms of that earlier result, so the producer is remembered and skipped.
  const bool closed = mode.kind() == Mode::Kind::star || mode.kind() == Mode::Kind::ge;
  FormSet visited;
  std::deque<std::pair<Form, std::size_t>> queue;
  const Form start(1, start_);
  if (weight(start) <= max_len) {
    visited.insert(start);
    queue.emplace_back(start, kUnbounded);
  }
  while (!queue.empty()) {
    const auto [f, producer] = std::move(queue.front());
    queue.pop_front();
    SystemStepResult step = step_system(f, mode, limits, producer);
    lang.truncated |= step.truncated;
    lang.budget_exceeded |= step.budget_exceeded;
    for (auto& s : step.successors) {
      if (is_terminal_form(s.form)) {
        if (s.form.size() <= max_len) words.insert(to_word(s.form));
        continue;
      }
      if (!visited.insert(s.form).second) continue;
      if (visited.size() > bounds.form_budget) {
        lang.budget_exceeded = true;
        queue.clear();
        break;
      }
      queue.emplace_back(std::move(s.form), closed ? s.component : kUnbounded);
    }
  }
  lang.forms_explored = visited.size();
  lang.words.assign(words.begin(), words.end());
  lang.complete = !lang.truncated && !lang.budget_exceeded;
  return lang;
}

BoundedLanguage Engine::enumerate_gc(std::size_t max_len, const StepBounds& bounds) const {
  BoundedLanguage lang;
  lang.max_len = max_len;
  std::set<Word, decltype(&shortlex_less)> words(&shortlex_less);
  auto key = [](const GcConfig& c) { return Form(1, static_cast<Sym>(c.label)) + c.form; };
  FormSet visited;
  std::deque<GcConfig> queue;
  std::size_t steps = 0;

  auto push_successors = [&](const GcConfig& from) {
    for (auto& next : gc_successors(from)) {
      if (++steps > bounds.step_budget) {
        lang.budget_exceeded = true;
        return false;
      }
      if (weight(next.form) > max_len) continue;
      if (next.form.size() > bounds.workspace) {
        lang.truncated = true;
        continue;
      }
      if (final_label_[next.label] && is_terminal_form(next.form))
        words.insert(to_word(next.form));
      if (!visited.insert(key(next)).second) continue;
      if (visited.size() > bounds.form_budget) {
        lang.budget_exceeded = true;
        return false;
      }
      queue.push_back(std::move(next));
    }
    return true;
  };

  // Initial configurations count as zero steps; only their successors may accept.
  const Form start(1, start_);
  bool ok = true;
  for (std::size_t l : init_labels_)
    if (ok) ok = push_successors({start, l});
  while (ok && !queue.empty()) {
    GcConfig c = std::move(queue.front());
    queue.pop_front();
    ok = push_successors(c);
  }
  lang.forms_explored = visited.size();
  lang.words.assign(words.begin(), words.end());
  lang.complete = !lang.truncated && !lang.budget_exceeded;
  return lang;
}

// ---------------------------------------------------------------- derivations

std::optional<std::vector<Application>> Engine::explain_activation(
    std::size_t component, const Form& from, const Form& to, Mode mode,
    const StepBounds& bounds) const {
  const unsigned k = mode.k();
  unsigned cap = 1;
  if (mode.kind() == Mode::Kind::eq || mode.kind() == Mode::Kind::le ||
      mode.kind() == Mode::Kind::ge)
    cap = k;
  auto accepts = [&](const Form& f, unsigned count) {
    if (f != to) return false;
    switch (mode.kind()) {
      case Mode::Kind::eq:
      case Mode::Kind::ge: return count == k;
      case Mode::Kind::le: return count >= 1 && count <= k;
      case Mode::Kind::star: return count >= 1;
      case Mode::Kind::t: return count >= 1 && !any_rule_applicable(component, f);
    }
    return false;
  };
  auto next_count = [&](unsigned count) {
    if (mode.kind() == Mode::Kind::eq || mode.kind() == Mode::Kind::le) return count + 1;
    return std::min(count + 1, cap);
  };

  struct Node {
    Form form;
    unsigned count;
    std::size_t parent;
    Application via;
  };
  std::vector<Node> nodes{{from, 0, 0, {}}};
  std::unordered_set<Form, FormHash> seen;
  auto key = [](const Form& f, unsigned count) { return Form(1, static_cast<Sym>(count)) + f; };
  seen.insert(key(from, 0));
  const std::size_t target_weight = weight(to);
  std::vector<Successor> buf;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (accepts(nodes[head].form, nodes[head].count)) {
      std::vector<Application> path;
      for (std::size_t i = head; i != 0; i = nodes[i].parent) path.push_back(nodes[i].via);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if ((mode.kind() == Mode::Kind::eq || mode.kind() == Mode::Kind::le) &&
        nodes[head].count >= k)
      continue;
    if (nodes.size() > bounds.form_budget) return std::nullopt;
    successors_into(components_[component], nodes[head].form, buf);
    for (auto& s : buf) {
      if (s.form.size() > bounds.workspace || weight(s.form) > target_weight) continue;
      const unsigned c = next_count(nodes[head].count);
      if (!seen.insert(key(s.form, c)).second) continue;
      nodes.push_back({std::move(s.form), c, head, s.via});
    }
  }
  return std::nullopt;
}

std::optional<DerivationTrace> Engine::find_derivation(Mode mode, const Word& target,
                                                       const StepBounds& bounds) const {
  const Form goal = to_form(target);
  if (!is_terminal_form(goal)) throw Error("derivation target must be a terminal word");
  if (system_.kind == SystemKind::gc) return find_gc_derivation(target, bounds);

  const Limits limits{bounds.workspace, goal.size(), bounds.step_budget};
  const Form start(1, start_);
  std::unordered_map<Form, std::pair<Form, std::size_t>, FormHash> parent;
  parent.emplace(start, std::make_pair(Form{}, std::size_t{0}));
  std::deque<Form> queue{start};
  bool found = false;
  while (!queue.empty() && !found) {
    const Form f = std::move(queue.front());
    queue.pop_front();
    for (auto& s : step_system(f, mode, limits).successors) {
      if (parent.contains(s.form)) continue;
      parent.emplace(s.form, std::make_pair(f, s.component));
      if (s.form == goal) {
        found = true;
        break;
      }
      if (parent.size() > bounds.form_budget) return std::nullopt;
      if (!is_terminal_form(s.form)) queue.push_back(std::move(s.form));
    }
  }
  if (!found) return std::nullopt;

  std::vector<std::pair<Form, std::size_t>> hops;  // (result form, component)
  for (Form f = goal; f != start; f = parent.at(f).first) hops.push_back({f, parent.at(f).second});
  std::reverse(hops.begin(), hops.end());

  DerivationTrace trace;
  trace.start = start;
  Form cur = start;
  for (const auto& [form, comp] : hops) {
    auto apps = explain_activation(comp, cur, form, mode, bounds);
    if (!apps) return std::nullopt;
    trace.steps.push_back({system_.components[comp].name, mode, std::move(*apps), form, {}});
    cur = form;
  }
  return trace;
}

std::optional<DerivationTrace> Engine::find_gc_derivation(const Word& target,
                                                          const StepBounds& bounds) const {
  const Form goal = to_form(target);
  auto key = [](const GcConfig& c) { return Form(1, static_cast<Sym>(c.label)) + c.form; };
  struct Node {
    GcConfig config;
    std::size_t parent;
  };
  std::vector<Node> nodes;
  FormSet seen;
  const Form start(1, start_);
  for (std::size_t l : init_labels_) nodes.push_back({{start, l}, SIZE_MAX});
  const std::size_t roots = nodes.size();
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (head >= roots && nodes[head].config.form == goal && final_label_[nodes[head].config.label]) {
      std::vector<std::size_t> chain;
      for (std::size_t i = head; i != SIZE_MAX; i = nodes[i].parent) chain.push_back(i);
      std::reverse(chain.begin(), chain.end());
      DerivationTrace trace;
      trace.start = start;
      trace.start_label = system_.gc_rules[nodes[chain.front()].config.label].label();
      for (std::size_t c = 1; c < chain.size(); ++c) {
        const GcConfig& prev = nodes[chain[c - 1]].config;
        const GcConfig& next = nodes[chain[c]].config;
        TraceStep step;
        step.component = system_.gc_rules[prev.label].label();
        step.form = next.form;
        step.next_label = system_.gc_rules[next.label].label();
        const CRule& r = gc_rules_[prev.label].rule;
        for (std::size_t pos = 0; pos < prev.form.size(); ++pos)
          if (prev.form[pos] == r.lhs && apply_at(prev.form, pos, r.rhs) == next.form) {
            step.applications.push_back({0, pos});
            break;
          }
        trace.steps.push_back(std::move(step));
      }
      return trace;
    }
    if (nodes.size() > bounds.form_budget) return std::nullopt;
    for (auto& next : gc_successors(nodes[head].config)) {
      if (next.form.size() > bounds.workspace || weight(next.form) > goal.size()) continue;
      if (!seen.insert(key(next)).second) continue;
      nodes.push_back({std::move(next), head});
    }
  }
  return std::nullopt;
}

bool Engine::replay(const DerivationTrace& trace, Mode mode) const {
  Form cur = trace.start;
  if (system_.kind == SystemKind::gc) {
    auto label_of = [&](const std::string& l) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < system_.gc_rules.size(); ++i)
        if (system_.gc_rules[i].label() == l) return i;
      return std::nullopt;
    };
    auto label = label_of(trace.start_label);
    if (!label || std::find(init_labels_.begin(), init_labels_.end(), *label) == init_labels_.end())
      return false;
    for (const auto& step : trace.steps) {
      auto next = label_of(step.next_label);
      if (!next || step.component != system_.gc_rules[*label].label()) return false;
      const GcConfig want{step.form, *next};
      const auto succ = gc_successors({cur, *label});
      if (std::find(succ.begin(), succ.end(), want) == succ.end()) return false;
      cur = step.form;
      label = next;
    }
    return !trace.steps.empty() && final_label_[*label] && is_terminal_form(cur);
  }

  const Limits limits{StepBounds{}.workspace, kInf, StepBounds{}.step_budget};
  for (const auto& step : trace.steps) {
    auto ci = system_.component_index(step.component);
    if (!ci) return false;
    if (system_.kind == SystemKind::entry_cdgs && !entry_allows(*ci, cur)) return false;
    if (system_.kind == SystemKind::pcdgs) {
      for (std::size_t j : components_[*ci].greater) {
        // A superior blocks only if it is itself unblocked; superiors are
        // transitively closed, so a maximal nonempty one exists if any does.
        bool exact = true;
        if (relation_nonempty(j, cur, mode, {std::max<std::size_t>(cur.size() * 4, 64), kInf,
                                             limits.step_budget},
                              exact))
          return false;
      }
    }
    const CComponent& c = components_[*ci];
    for (const auto& a : step.applications) {
      if (a.rule >= c.rules.size() || a.position >= cur.size()) return false;
      if (!rule_applicable(*ci, cur, a.rule) || cur[a.position] != c.rules[a.rule].lhs)
        return false;
      cur = apply_at(cur, a.position, c.rules[a.rule].rhs);
    }
    const std::size_t n = step.applications.size();
    bool count_ok = false;
    switch (mode.kind()) {
      case Mode::Kind::eq: count_ok = n == mode.k(); break;
      case Mode::Kind::le: count_ok = n >= 1 && n <= mode.k(); break;
      case Mode::Kind::ge: count_ok = n >= mode.k(); break;
      case Mode::Kind::star: count_ok = n >= 1; break;
      case Mode::Kind::t: count_ok = n >= 1 && !any_rule_applicable(*ci, cur); break;
    }
    if (!count_ok || cur != step.form) return false;
  }
  return true;
}

}  // namespace rrw
