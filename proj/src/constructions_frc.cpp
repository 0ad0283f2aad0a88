#include <map>

#include "construction_util.hpp"

namespace rrw {

using namespace detail;

namespace {

/// Interns right-hand sides so equal words share one counter family.
class WordIds {
 public:
  std::size_t id(const Word& w) {
    auto [it, inserted] = ids_.emplace(w, ids_.size() + 1);
    return it->second;
  }

 private:
  std::map<Word, std::size_t> ids_;
};

SymbolSet all_of(const std::vector<std::string>& names) { return {names.begin(), names.end()}; }

}  // namespace

ConstructionResult frccd_collapse_to_single(const System& in, Mode mode) {
  const std::string name = "frccd-merge";
  const bool ok = mode.kind() == Mode::Kind::le || mode.kind() == Mode::Kind::star ||
                  ((mode.kind() == Mode::Kind::eq || mode.kind() == Mode::Kind::ge) && mode.k() == 1);
  require_mode(ok, name, mode);
  require_kind(in, {SystemKind::frccdgs}, name);
  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::frccdgs, "merged");
  ComponentBuilder b("P");
  for (const auto& c : in.components)
    for (const auto& r : c.rules) {
      Rule copy = r;
      copy.label.clear();
      b.add(std::move(copy));
    }
  out.components.push_back(b.build());
  return finish(std::move(out), in, fresh, make_report(name, mode.str(), mode.str()));
}

ConstructionResult frccd_to_eq2(const System& in, Mode input_mode) {
  const std::string name = "frccd-to-eq2";
  require_kind(in, {SystemKind::frccdgs}, name);
  const bool ge = input_mode.kind() == Mode::Kind::ge;
  require_mode((ge || input_mode.kind() == Mode::Kind::eq) && input_mode.k() >= 2, name,
               input_mode);
  const unsigned k = input_mode.k();
  const std::size_t n = in.components.size();

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::frccdgs, "eq2");
  out.start = fresh.get(in.start + "'", "start");
  const std::string& y = fresh.get("Y");
  std::vector<std::string> yi(n);
  for (std::size_t i = 0; i < n; ++i) yi[i] = fresh.get("Y$" + std::to_string(i + 1));

  WordIds words;
  auto counter = [&](const Word& w, unsigned level) -> const std::string& {
    return fresh.get("X$w" + std::to_string(words.id(w)) + "$" + std::to_string(level), "counter");
  };
  // Counter symbols per component, needed for the forbidden sets below.
  std::vector<SymbolSet> xi(n);
  SymbolSet x_all;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& r : in.components[i].rules)
      for (unsigned l = 1; l <= k; ++l) {
        xi[i].insert(counter(r.rhs, l));
        x_all.insert(counter(r.rhs, l));
      }
  SymbolSet y_all{y};
  y_all.insert(yi.begin(), yi.end());

  {
    ComponentBuilder init("Pinit");
    init.add(make_rule(in.start, {in.start}));
    init.add(make_rule(out.start, {y, in.start}));
    out.components.push_back(init.build());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rules = in.components[i].rules;
    const std::string base = in.components[i].name;
    const SymbolSet not_yi = minus(y_all, {yi[i]});
    {
      ComponentBuilder c(base + "_0");
      for (const auto& r : rules)
        c.add(make_rule(r.lhs, {counter(r.rhs, 1)}, unite(unite(r.forbid, x_all), minus(y_all, {y}))));
      c.add(make_rule(y, {yi[i]}));
      out.components.push_back(c.build());
    }
    for (unsigned l = 1; l <= k; ++l) {
      if (l == k && !ge) continue;
      ComponentBuilder c(base + "_" + std::to_string(l));
      for (const auto& r : rules) c.add(make_rule(counter(r.rhs, l), r.rhs, not_yi));
      const unsigned next = l < k ? l + 1 : k;
      for (const auto& r : rules)
        c.add(make_rule(r.lhs, {counter(r.rhs, next)}, unite(unite(r.forbid, x_all), not_yi)));
      out.components.push_back(c.build());
    }
    {
      ComponentBuilder c(base + "_" + std::to_string(k + 1));
      for (const auto& r : rules) c.add(make_rule(counter(r.rhs, k), r.rhs, not_yi));
      c.add(make_rule(yi[i], {y}, unite(not_yi, xi[i])));
      SymbolSet others = unite(all_of(in.nonterminals), unite(x_all, y_all));
      others.insert(out.start);
      others.erase(yi[i]);
      c.add(make_rule(yi[i], {}, others));
      out.components.push_back(c.build());
    }
  }

  ConstructionReport rep = make_report(name, input_mode.str(), "=2");
  rep.notes.push_back("counters X$w<id>$<level> store pending right-hand sides");
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult frccd_eq2_to_k(const System& in, Mode output_mode) {
  const std::string name = "frccd-eq2-to-k";
  require_kind(in, {SystemKind::frccdgs}, name);
  const bool ge = output_mode.kind() == Mode::Kind::ge;
  require_mode((ge || output_mode.kind() == Mode::Kind::eq) && output_mode.k() >= 3, name,
               output_mode);
  const unsigned k = output_mode.k();

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::frccdgs, "eq" + std::to_string(k));
  const std::string eps = "eps";

  // First symbols (or eps) of right-hand sides get marked copies at every level.
  std::set<std::string> firsts;
  for (const auto& c : in.components)
    for (const auto& r : c.rules) firsts.insert(r.rhs.empty() ? eps : r.rhs.front());
  auto mark = [&](const std::string& x, unsigned level) -> const std::string& {
    return fresh.get(x + "$m" + std::to_string(level), "mark");
  };
  SymbolSet marks_from2, marks_all;
  for (const auto& x : firsts)
    for (unsigned j = 1; j <= k; ++j) {
      marks_all.insert(mark(x, j));
      if (j >= 2) marks_from2.insert(mark(x, j));
    }
  auto marked = [&](const Word& w, unsigned level) {
    Word o = w;
    if (o.empty()) return Word{mark(eps, level)};
    o.front() = mark(o.front(), level);
    return o;
  };
  auto primed = [&](const SymbolSet& f) {
    SymbolSet o;
    for (const auto& x : f)
      if (firsts.contains(x)) o.insert(mark(x, 1));
    return o;
  };

  WordIds words;
  auto chain = [&](const Word& w, unsigned level) -> const std::string& {
    return fresh.get("X$w" + std::to_string(words.id(w)) + "$" + std::to_string(level), "counter");
  };
  SymbolSet x_all;
  for (const auto& c : in.components)
    for (const auto& r : c.rules)
      for (unsigned j = 1; j + 2 <= k; ++j) x_all.insert(chain(r.rhs, j));

  for (const auto& c : in.components) {
    ComponentBuilder b(c.name);
    for (const auto& r : c.rules)
      b.add(make_rule(r.lhs, {chain(r.rhs, 1)}, unite(unite(r.forbid, marks_all), x_all)));
    for (const auto& r : c.rules) {
      for (unsigned j = 1; j + 2 < k; ++j) b.add(make_rule(chain(r.rhs, j), {chain(r.rhs, j + 1)}));
      b.add(make_rule(chain(r.rhs, k - 2), marked(r.rhs, 1)));
    }
    for (const auto& r : c.rules) {
      const SymbolSet f = unite(unite(unite(r.forbid, primed(r.forbid)), marks_from2), x_all);
      b.add(make_rule(r.lhs, marked(r.rhs, k - 1), f));
      if (firsts.contains(r.lhs)) b.add(make_rule(mark(r.lhs, 1), marked(r.rhs, k), f));
    }
    out.components.push_back(b.build());
  }
  {
    ComponentBuilder reset("Preset");
    for (const auto& x : firsts)
      for (unsigned j = 1; j <= k; ++j) {
        Word lower;
        if (j > 1) lower = {mark(x, j - 1)};
        else if (x != eps) lower = {x};
        reset.add(make_rule(mark(x, j), lower, x_all));
        if (ge) reset.add(make_rule(mark(x, j), {mark(x, j)}, x_all));
      }
    out.components.push_back(reset.build());
  }

  ConstructionReport rep = make_report(name, "=2", output_mode.str());
  rep.notes.push_back("second steps also forbid the level-1 marks of their forbidden symbols");
  if (ge) rep.notes.push_back("reset markers carry unproductive self-rules for the >=k reading");
  return finish(std::move(out), in, fresh, rep);
}

}  // namespace rrw
