#include <algorithm>
#include <map>
#include <tuple>

#include "construction_util.hpp"

namespace rrw {

using namespace detail;

namespace {

SymbolSet entry_forbid(const Component& c, const std::string& construction) {
  if (!c.entry) return {};
  if (!c.entry->permit.empty())
    throw PermitPresent(construction + ": component " + c.name + " has a permitting entry condition");
  return c.entry->forbid;
}

Component with_entry(Component c, SymbolSet forbid) {
  c.entry = RcCondition{{}, std::move(forbid)};
  return c;
}

bool avoids(const Word& w, const SymbolSet& f) {
  return std::none_of(w.begin(), w.end(), [&](const std::string& x) { return f.contains(x); });
}

SymbolSet input_nonterminals(const System& in) { return {in.nonterminals.begin(), in.nonterminals.end()}; }

}  // namespace

ConstructionResult cdfrc_to_frccd(const System& in, Mode mode) {
  const std::string name = "cdfrc-to-frccd";
  require_kind(in, {SystemKind::entry_cdgs}, name);
  const bool t = mode.kind() == Mode::Kind::t;
  const bool ge = mode.kind() == Mode::Kind::ge;
  require_mode(t || ge || mode.kind() == Mode::Kind::star, name, mode);
  const bool pad = ge && mode.k() >= 2;
  const std::size_t n = in.components.size();

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::frccdgs, "frccd");
  out.start = fresh.get(in.start + "'", "start");
  const std::string y = fresh.get("Y");
  std::vector<std::string> yf(n);
  for (std::size_t i = 0; i < n; ++i) yf[i] = fresh.get("Y$F" + std::to_string(i + 1));
  const SymbolSet n_in = input_nonterminals(in);

  {
    ComponentBuilder b("P0");
    b.add(make_rule(out.start, {y, in.start}));
    if (pad) b.add(make_rule(y, {y}));
    out.components.push_back(b.build());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Component& c = in.components[i];
    const SymbolSet f = entry_forbid(c, name);
    ComponentBuilder check(c.name + "_F");
    check.add(make_rule(y, {yf[i]}, f));
    for (std::size_t j = 0; j < n; ++j)
      if (!(t && j == i)) check.add(make_rule(yf[j], {yf[i]}, f));
    out.components.push_back(check.build());

    SymbolSet blockers{y};
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) blockers.insert(yf[j]);
    ComponentBuilder body(c.name);
    for (const auto& r : c.rules) body.add(make_rule(r.lhs, r.rhs, blockers));
    out.components.push_back(body.build());
  }
  {
    ComponentBuilder b("Pend");
    std::vector<std::string> markers{y};
    markers.insert(markers.end(), yf.begin(), yf.end());
    for (const auto& x : markers) {
      if (pad) b.add(make_rule(x, {x}, n_in));
      b.add(make_rule(x, {}, n_in));
    }
    out.components.push_back(b.build());
  }

  ConstructionReport rep = make_report(name, mode.str(), mode.str());
  rep.notes.push_back("markers Y$F<i> record the entry condition checked last");
  if (pad) rep.notes.push_back("marker self-rules let single-step components reach " + mode.str());
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult frccd_eq2_to_cdfrc(const System& in, bool normalized) {
  const std::string name = "frccd-eq2-to-cdfrc";
  require_kind(in, {SystemKind::frccdgs}, name);

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::entry_cdgs, normalized ? "cdfrc_norm" : "cdfrc");
  const std::string hash = fresh.get("H");

  // One marker (two when normalized) per structurally distinct rule.
  using Key = std::tuple<std::string, Word, SymbolSet>;
  std::map<Key, std::size_t> ids;
  auto id_of = [&](const Rule& r) {
    return ids.emplace(Key{r.lhs, r.rhs, r.forbid}, ids.size() + 1).first->second;
  };
  auto mark = [&](const Rule& r) -> const std::string& {
    return fresh.get("X$p" + std::to_string(id_of(r)), "mark");
  };
  auto mark2 = [&](const Rule& r) -> const std::string& {
    return fresh.get("X$q" + std::to_string(id_of(r)), "mark");
  };
  SymbolSet x_all;
  for (const auto& c : in.components)
    for (const auto& r : c.rules) {
      x_all.insert(mark(r));
      if (normalized) x_all.insert(mark2(r));
    }

  std::set<std::pair<std::vector<Key>, SymbolSet>> seen;
  std::map<std::string, std::size_t> name_uses;
  auto emit = [&](const std::string& base, std::vector<Rule> rules, SymbolSet forbid) {
    std::vector<Key> shape;
    for (const auto& r : rules) shape.emplace_back(r.lhs, r.rhs, r.forbid);
    if (!seen.insert({shape, forbid}).second) return;
    const std::size_t use = name_uses[base]++;
    ComponentBuilder b(use == 0 ? base : base + "_" + std::to_string(use + 1));
    for (auto& r : rules) b.append(std::move(r));
    out.components.push_back(with_entry(b.build(), std::move(forbid)));
  };
  auto emit_mark = [&](const std::string& base, const Rule& p, const std::string& x) {
    emit(base + "_mark_" + p.label, {make_rule(p.lhs, {hash}), make_rule(hash, {x})},
         unite(p.forbid, {hash, x}));
  };
  auto emit_nested = [&](const std::string& base, const Rule& p, const Rule& q) {
    for (std::size_t pos = 0; pos < p.rhs.size(); ++pos) {
      if (p.rhs[pos] != q.lhs || q.forbid.contains(q.lhs)) continue;
      Word rest = p.rhs;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      if (!avoids(rest, q.forbid)) continue;
      Word result(p.rhs.begin(), p.rhs.begin() + static_cast<std::ptrdiff_t>(pos));
      result.insert(result.end(), q.rhs.begin(), q.rhs.end());
      result.insert(result.end(), p.rhs.begin() + static_cast<std::ptrdiff_t>(pos) + 1, p.rhs.end());
      emit_mark(base, p, mark(p));
      emit(base + "_nest_" + p.label + "_" + q.label,
           {make_rule(mark(p), {hash}), make_rule(hash, result)},
           unite(unite(unite(p.forbid, q.forbid), minus(x_all, {mark(p)})), {hash}));
    }
  };

  for (const auto& c : in.components) {
    const auto& rules = c.rules;
    for (std::size_t a = 0; a < rules.size(); ++a) {
      const Rule& p = rules[a];
      if (!avoids(p.rhs, p.forbid)) continue;
      if (!normalized) {
        emit(c.name + "_" + p.label, {make_rule(p.lhs, p.rhs)}, unite(unite(p.forbid, x_all), {hash}));
        continue;
      }
      emit_mark(c.name, p, mark(p));
      emit_mark(c.name, p, mark2(p));
      emit(c.name + "_twice_" + p.label, {make_rule(mark(p), p.rhs), make_rule(mark2(p), p.rhs)},
           unite(unite(p.forbid, minus(x_all, {mark(p), mark2(p)})), {hash}));
      emit_nested(c.name, p, p);
    }
    for (std::size_t a = 0; a < rules.size(); ++a)
      for (std::size_t b = a + 1; b < rules.size(); ++b) {
        const Rule& p = rules[a];
        const Rule& q = rules[b];
        const bool p_in_q = q.forbid.contains(p.lhs), q_in_p = p.forbid.contains(q.lhs);
        const bool free_lhs = !p_in_q && !q_in_p && !p.forbid.contains(p.lhs) && !q.forbid.contains(q.lhs);
        const bool either = free_lhs && (avoids(p.rhs, q.forbid) || avoids(q.rhs, p.forbid));
        const bool p_first = p_in_q && !q_in_p && avoids(p.rhs, q.forbid);
        const bool q_first = !p_in_q && q_in_p && avoids(q.rhs, p.forbid);
        if (either || p_first || q_first) {
          emit_mark(c.name, p, mark(p));
          emit_mark(c.name, q, mark(q));
          emit(c.name + "_pair_" + p.label + "_" + q.label,
               {make_rule(mark(p), p.rhs), make_rule(mark(q), q.rhs)},
               unite(unite(unite(p.forbid, q.forbid), minus(x_all, {mark(p), mark(q)})), {hash}));
        }
      }
    for (std::size_t a = 0; a < rules.size(); ++a)
      for (std::size_t b = 0; b < rules.size(); ++b)
        if (a != b) emit_nested(c.name, rules[a], rules[b]);
  }
  if (out.components.empty())
    throw Error(name + ": no rule can be applied twice within one component");

  ConstructionReport rep = make_report(name, "=2", "=2");
  rep.notes.push_back("H marks a pending two-step rewrite; every entry condition forbids it");
  if (normalized) rep.notes.push_back("every component has exactly two rules");
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult cdfrc_eq2_to_eqk(const System& in, unsigned k) {
  const std::string name = "cdfrc-eq2-to-eqk";
  require_kind(in, {SystemKind::entry_cdgs}, name);
  require_mode(k >= 3, name, Mode::eq(k));

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::entry_cdgs, "eq" + std::to_string(k));
  std::vector<std::string> wait;
  for (unsigned j = 1; j + 2 <= k; ++j) wait.push_back(fresh.get("H$" + std::to_string(j), "wait"));
  const SymbolSet wait_set(wait.begin(), wait.end());

  // Rewrites lhs -> ... -> rhs through the waiting symbols.
  auto prolong = [&](ComponentBuilder& b, const std::string& lhs, const Word& rhs) {
    std::string from = lhs;
    for (const auto& w : wait) {
      b.append(make_rule(from, {w}));
      from = w;
    }
    b.append(make_rule(from, rhs));
  };

  // Shape of each component: the index of Y in {Y -> Z, Z -> y} with Z forbidden
  // at entry, or none for {Y -> y, Z -> z}.
  std::vector<std::optional<std::size_t>> head(in.components.size());
  for (std::size_t i = 0; i < in.components.size(); ++i) {
    const Component& c = in.components[i];
    const SymbolSet f = entry_forbid(c, name);
    if (c.rules.size() != 2 || c.rules[0].lhs == c.rules[1].lhs)
      throw Error(name + ": component " + c.name + " is not in two-rule normal form");
    for (std::size_t a = 0; a < 2; ++a)
      if (c.rules[a].rhs == Word{c.rules[1 - a].lhs} && f.contains(c.rules[1 - a].lhs)) head[i] = a;
  }
  // Left-hand sides of {Y -> y, Z -> z} must occur at most once in every form:
  // they are only produced by a {A -> Z, Z -> Y} component that forbids Y.
  std::map<std::string, bool> single;
  for (std::size_t i = 0; i < in.components.size(); ++i) {
    const Component& c = in.components[i];
    for (std::size_t a = 0; a < 2; ++a) {
      const bool placing = head[i] && a != *head[i] && c.rules[a].rhs.size() == 1 &&
                           c.entry->forbid.contains(c.rules[a].rhs.front());
      for (const auto& x : c.rules[a].rhs)
        if (!placing) single[x] = false;
        else single.emplace(x, true);
    }
  }
  for (std::size_t i = 0; i < in.components.size(); ++i) {
    if (head[i]) continue;
    for (const auto& r : in.components[i].rules) {
      auto it = single.find(r.lhs);
      if (r.lhs == in.start || it == single.end() || !it->second)
        throw Error(name + ": component " + in.components[i].name + " rewrites '" + r.lhs +
                    "', which may occur more than once");
    }
  }

  for (std::size_t i = 0; i < in.components.size(); ++i) {
    const Component& c = in.components[i];
    ComponentBuilder b(c.name);
    if (head[i]) {
      const Rule& r = c.rules[*head[i]];
      const Rule& o = c.rules[1 - *head[i]];
      b.append(make_rule(r.lhs, r.rhs));
      prolong(b, o.lhs, o.rhs);
    } else {
      const auto key = [](const Rule& r) { return std::tie(r.lhs, r.rhs); };
      const std::size_t first = key(c.rules[0]) <= key(c.rules[1]) ? 0 : 1;
      prolong(b, c.rules[first].lhs, c.rules[first].rhs);
      b.append(make_rule(c.rules[1 - first].lhs, c.rules[1 - first].rhs));
    }
    out.components.push_back(with_entry(b.build(), unite(entry_forbid(c, name), wait_set)));
  }

  ConstructionReport rep = make_report(name, "=2", "=" + std::to_string(k));
  rep.notes.push_back("waiting symbols H$<j> stretch one rewrite of each component to " +
                      std::to_string(k - 1) + " steps");
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult cdfrc_geqk_to_geq2(const System& in, unsigned k) {
  const std::string name = "cdfrc-geqk-to-geq2";
  require_kind(in, {SystemKind::entry_cdgs}, name);
  require_mode(k >= 2, name, Mode::ge(k));
  const std::size_t n = in.components.size();

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::entry_cdgs, "geq2");
  out.start = fresh.get(in.start + "'", "start");
  const std::string y = fresh.get("Y");
  const std::string y_pick = fresh.get("Y'");
  std::vector<std::vector<std::string>> count(n);
  SymbolSet y_all{y, y_pick};
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned j = 0; j <= k; ++j) {
      count[i].push_back(fresh.get("Y$" + std::to_string(i + 1) + "$" + std::to_string(j)));
      y_all.insert(count[i].back());
    }

  auto body = [&](ComponentBuilder& b, const Component& c) {
    for (const auto& r : c.rules) b.add(make_rule(r.lhs, r.rhs));
  };
  {
    ComponentBuilder b("P0");
    b.add(make_rule(out.start, {y, in.start}));
    b.add(make_rule(y, {y}));
    out.components.push_back(with_entry(b.build(), {}));
  }
  {
    ComponentBuilder b("Pend");
    b.add(make_rule(y, {y}));
    b.add(make_rule(y, {}));
    out.components.push_back(with_entry(b.build(), unite(input_nonterminals(in), minus(y_all, {y}))));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Component& c = in.components[i];
    const SymbolSet f = entry_forbid(c, name);
    const auto& ci = count[i];
    {
      ComponentBuilder b(c.name + "_pick");
      b.add(make_rule(y, {y_pick}));
      b.add(make_rule(y_pick, {ci[0]}));
      out.components.push_back(with_entry(b.build(), unite(f, minus(y_all, {y}))));
    }
    for (unsigned l = 0; l <= k + 1; ++l) {
      ComponentBuilder b(c.name + "_" + std::to_string(l));
      const std::string& held = ci[std::min(l, k)];
      if (l < k) b.add(make_rule(held, {ci[l + 1]}));
      else if (l == k) b.add(make_rule(held, {held}));
      else {
        b.add(make_rule(held, {y}));
        b.add(make_rule(y, {y}));
      }
      body(b, c);
      out.components.push_back(with_entry(b.build(), minus(y_all, {held})));
    }
  }

  ConstructionReport rep = make_report(name, ">=" + std::to_string(k), ">=2");
  rep.notes.push_back("counters Y$<i>$<j> record completed steps of component i");
  return finish(std::move(out), in, fresh, rep);
}

}  // namespace rrw
