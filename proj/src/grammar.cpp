#include "rrw/grammar.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace rrw {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string render_word(const Word& w) {
  if (w.empty()) return "eps";
  const bool compact =
      std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += w[i];
  }
  return out;
}

// ---------------------------------------------------------------- Mode

Mode::Mode(Kind kind, unsigned k) : kind_(kind), k_(k) {
  if (k_ < 1) throw ModeError("mode bound must be at least 1");
}

Mode Mode::parse(std::string_view text) {
  if (text == "t") return t();
  if (text == "*") return star();
  auto number = [&](std::string_view digits) {
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw ModeError("malformed mode '" + std::string(text) + "'");
    return k;
  };
  if (text.starts_with("<=")) return le(number(text.substr(2)));
  if (text.starts_with(">=")) return ge(number(text.substr(2)));
  if (text.starts_with("=")) return eq(number(text.substr(1)));
  throw ModeError("malformed mode '" + std::string(text) + "'");
}

std::string Mode::str() const {
  switch (kind_) {
    case Kind::t: return "t";
    case Kind::star: return "*";
    case Kind::eq: return "=" + std::to_string(k_);
    case Kind::le: return "<=" + std::to_string(k_);
    case Kind::ge: return ">=" + std::to_string(k_);
  }
  return "?";
}

// ---------------------------------------------------------------- StrictOrder

StrictOrder StrictOrder::close(std::size_t size,
                               const std::set<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::vector<char>> rel(size, std::vector<char>(size, 0));
  for (auto [g, l] : pairs) {
    if (g >= size || l >= size)
      throw IndexError("order pair (" + std::to_string(g) + "," + std::to_string(l) +
                       ") outside domain of size " + std::to_string(size));
    rel[g][l] = 1;
  }
  // Warshall
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (rel[i][k])
        for (std::size_t j = 0; j < size; ++j)
          if (rel[k][j]) rel[i][j] = 1;

  StrictOrder order;
  if (pairs.empty()) return order;  // one canonical empty order regardless of domain
  order.size_ = size;
  for (std::size_t i = 0; i < size; ++i) {
    if (rel[i][i]) throw CycleError("order is cyclic at element " + std::to_string(i));
    for (std::size_t j = 0; j < size; ++j)
      if (rel[i][j]) order.pairs_.insert({i, j});
  }
  return order;
}

StrictOrder close_order(std::size_t size,
                        const std::set<std::pair<std::size_t, std::size_t>>& pairs) {
  return StrictOrder::close(size, pairs);
}

std::vector<std::size_t> StrictOrder::above(std::size_t l) const {
  std::vector<std::size_t> out;
  for (auto [g, x] : pairs_)
    if (x == l) out.push_back(g);
  return out;
}

std::size_t StrictOrder::longest_chain() const {
  if (size_ == 0) return 0;
  // Longest chain ending at each element; process in an order compatible with >.
  std::vector<std::size_t> depth(size_, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [g, l] : pairs_) {
      if (depth[l] < depth[g] + 1) {
        depth[l] = depth[g] + 1;
        changed = true;
      }
    }
  }
  return *std::max_element(depth.begin(), depth.end());
}

// ---------------------------------------------------------------- Rule / Component / System

std::string Rule::str() const {
  std::string out = lhs + " ->";
  if (rhs.empty()) out += " eps";
  for (const auto& s : rhs) out += " " + s;
  return out;
}

std::optional<std::size_t> Component::rule_index(std::string_view label) const {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].label == label) return i;
  return std::nullopt;
}

namespace {

constexpr std::pair<SystemKind, std::string_view> kKindNames[] = {
    {SystemKind::cf, "cf"},           {SystemKind::ordered, "ordered"},
    {SystemKind::cdgs, "cdgs"},       {SystemKind::ocdgs, "ocdgs"},
    {SystemKind::rccdgs, "rccdgs"},   {SystemKind::frccdgs, "frccdgs"},
    {SystemKind::gc, "gc"},           {SystemKind::entry_cdgs, "entry-cdgs"},
    {SystemKind::pcdgs, "pcdgs"},
};

}  // namespace

std::string_view kind_name(SystemKind kind) {
  for (auto [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<SystemKind> parse_kind(std::string_view text) {
  for (auto [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

Regulation regulation_of(SystemKind kind) {
  switch (kind) {
    case SystemKind::ordered:
    case SystemKind::ocdgs: return Regulation::ordered;
    case SystemKind::rccdgs: return Regulation::rc;
    case SystemKind::frccdgs: return Regulation::frc;
    default: return Regulation::none;
  }
}

bool System::is_nonterminal(std::string_view s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

bool System::is_terminal(std::string_view s) const {
  return std::find(terminals.begin(), terminals.end(), s) != terminals.end();
}

bool System::has_erasing_rule() const {
  for (const Rule* r : all_rules())
    if (r->erasing()) return true;
  return false;
}

std::optional<std::size_t> System::component_index(std::string_view n) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].name == n) return i;
  return std::nullopt;
}

std::vector<const Rule*> System::all_rules() const {
  std::vector<const Rule*> out;
  for (const auto& c : components)
    for (const auto& r : c.rules) out.push_back(&r);
  for (const auto& g : gc_rules) out.push_back(&g.core);
  return out;
}

// ---------------------------------------------------------------- validation

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::str() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << '\n';
    os << violations[i].code << ": " << violations[i].message;
  }
  return os.str();
}

namespace {

class Validator {
 public:
  explicit Validator(const System& s) : s_(s) {}

  ValidationReport run() {
    check_alphabets();
    if (s_.kind == SystemKind::gc)
      check_gc();
    else
      check_components();
    check_priority();
    if (s_.non_erasing && s_.has_erasing_rule())
      add("erasing-flag", "system is flagged non-erasing but contains a lambda rule");
    return std::move(report_);
  }

 private:
  void add(std::string code, std::string message) {
    report_.violations.push_back({std::move(code), std::move(message)});
  }

  void check_alphabets() {
    std::map<std::string, int> seen;
    for (const auto& n : s_.nonterminals) {
      if (n.empty()) add("empty-name", "empty nonterminal name");
      if (++seen[n] == 2) add("duplicate-symbol", "nonterminal '" + n + "' declared twice");
    }
    std::set<std::string> terms;
    for (const auto& t : s_.terminals) {
      if (t.empty()) add("empty-name", "empty terminal name");
      if (!terms.insert(t).second) add("duplicate-symbol", "terminal '" + t + "' declared twice");
      if (seen.contains(t))
        add("alphabet-overlap", "symbol '" + t + "' is both terminal and nonterminal");
    }
    if (!s_.is_nonterminal(s_.start))
      add("start-invalid", "start symbol '" + s_.start + "' is not a nonterminal");
  }

  void check_symbol_set(const SymbolSet& set, const std::string& where) {
    for (const auto& x : set)
      if (!s_.is_nonterminal(x))
        add("undeclared-symbol", where + ": context symbol '" + x + "' is not a nonterminal");
  }

  void check_rule(const Rule& r, const std::string& where) {
    if (!s_.is_nonterminal(r.lhs))
      add("lhs-not-nonterminal", where + ": left-hand side '" + r.lhs + "' is not a nonterminal");
    for (const auto& x : r.rhs)
      if (!s_.is_nonterminal(x) && !s_.is_terminal(x))
        add("undeclared-symbol", where + ": symbol '" + x + "' is not declared");
    check_symbol_set(r.permit, where);
    check_symbol_set(r.forbid, where);
    for (const auto& x : r.permit)
      if (r.forbid.contains(x))
        add("rc-overlap", where + ": '" + x + "' is both permitting and forbidden");
    const Regulation reg = regulation_of(s_.kind);
    if (!r.permit.empty() && reg != Regulation::rc)
      add("regulation-mismatch", where + ": permitting context not allowed in " +
                                     std::string(kind_name(s_.kind)));
    if (!r.forbid.empty() && reg != Regulation::rc && reg != Regulation::frc)
      add("regulation-mismatch", where + ": forbidden context not allowed in " +
                                     std::string(kind_name(s_.kind)));
    if (r.label.empty()) add("label-missing", where + ": rule has no label");
  }

  void check_components() {
    if (s_.components.empty()) add("no-components", "system has no components");
    if ((s_.kind == SystemKind::cf || s_.kind == SystemKind::ordered) && s_.components.size() != 1)
      add("component-count", std::string(kind_name(s_.kind)) + " requires exactly one component");
    if (!s_.gc_rules.empty() || !s_.init_labels.empty() || !s_.final_labels.empty())
      add("gc-structure", "graph-control fields are only allowed in gc systems");
    std::set<std::string> names;
    for (const auto& c : s_.components) {
      const std::string where = "component " + c.name;
      if (c.name.empty()) add("empty-name", "component without a name");
      if (!names.insert(c.name).second)
        add("duplicate-component", "component '" + c.name + "' declared twice");
      // Empty components are rejected; every construction emits nonempty ones.
      if (c.rules.empty()) add("empty-component", where + " has no rules");
      std::set<std::string> labels;
      for (std::size_t i = 0; i < c.rules.size(); ++i) {
        const Rule& r = c.rules[i];
        check_rule(r, where + " rule " + r.label);
        if (!r.label.empty() && !labels.insert(r.label).second)
          add("label-duplicate", where + ": label '" + r.label + "' used twice");
      }
      check_order(c.order, c.rules.size(), where,
                  regulation_of(s_.kind) == Regulation::ordered);
      if (c.entry) {
        if (s_.kind != SystemKind::entry_cdgs)
          add("entry-misuse", where + ": entry conditions only allowed in entry-cdgs");
        check_symbol_set(c.entry->permit, where + " entry");
        check_symbol_set(c.entry->forbid, where + " entry");
        for (const auto& x : c.entry->permit)
          if (c.entry->forbid.contains(x))
            add("rc-overlap", where + ": entry symbol '" + x + "' is both permitting and forbidden");
      }
    }
  }

  void check_order(const StrictOrder& order, std::size_t n, const std::string& where,
                   bool allowed) {
    if (order.empty()) return;
    if (!allowed) {
      add("regulation-mismatch", where + ": rule order not allowed in " +
                                     std::string(kind_name(s_.kind)));
      return;
    }
    if (order.size() != n)
      add("order-invalid", where + ": order domain does not match rule count");
    for (auto [g, l] : order.pairs()) {
      if (g >= n || l >= n) {
        add("order-invalid", where + ": order refers to a missing rule");
        continue;
      }
      if (g == l) add("order-invalid", where + ": order is not irreflexive");
      if (order.greater(l, g)) add("order-invalid", where + ": order is not asymmetric");
    }
    for (auto [a, b] : order.pairs())
      for (auto [c, d] : order.pairs())
        if (b == c && !order.greater(a, d))
          add("order-invalid", where + ": order is not transitively closed");
  }

  void check_gc() {
    if (!s_.components.empty()) add("gc-structure", "gc systems keep rules in gc_rules only");
    if (s_.gc_rules.empty()) add("no-components", "gc system has no rules");
    std::set<std::string> labels;
    for (const auto& g : s_.gc_rules) {
      check_rule(g.core, "gc rule " + g.label());
      if (!g.label().empty() && !labels.insert(g.label()).second)
        add("label-duplicate", "gc label '" + g.label() + "' used twice");
    }
    auto check_ref = [&](const std::string& l, const std::string& where) {
      if (!labels.contains(l)) add("unknown-label", where + " refers to unknown label '" + l + "'");
    };
    for (const auto& g : s_.gc_rules) {
      for (const auto& l : g.success) check_ref(l, "success field of " + g.label());
      for (const auto& l : g.failure) check_ref(l, "failure field of " + g.label());
    }
    for (const auto& l : s_.init_labels) check_ref(l, "init-labels");
    for (const auto& l : s_.final_labels) check_ref(l, "final-labels");
  }

  void check_priority() {
    if (s_.priority.empty()) return;
    if (s_.kind != SystemKind::pcdgs) {
      add("regulation-mismatch", "component priorities only allowed in pcdgs");
      return;
    }
    check_order(s_.priority, s_.components.size(), "priority", true);
  }

  const System& s_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const System& system) { return Validator(system).run(); }

}  // namespace rrw
