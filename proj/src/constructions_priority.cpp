#include "construction_util.hpp"
#include "rrw/equivalence.hpp"

namespace rrw {

using namespace detail;

ConstructionResult cdfrc_to_pcd(const System& in, Mode mode) {
  const std::string name = "cdfrc-to-pcd";
  require_kind(in, {SystemKind::entry_cdgs}, name);
  for (const auto& c : in.components)
    if (c.entry && !c.entry->permit.empty())
      throw PermitPresent(name + ": component " + c.name + " has a permitting entry condition");

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::pcdgs, "pcd");
  const std::string& fail = fresh.get("X$f");
  const std::size_t n = in.components.size();
  for (const auto& c : in.components) {
    Component copy = c;
    copy.entry.reset();
    out.components.push_back(std::move(copy));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const Component& c = in.components[i];
    if (!c.entry || c.entry->forbid.empty()) continue;
    ComponentBuilder b(c.name + "_fail");
    for (const auto& x : c.entry->forbid) {
      b.add(make_rule(x, {x}));
      b.add(make_rule(x, {fail}));
    }
    pairs.insert({out.components.size(), i});
    out.components.push_back(b.build());
  }
  out.priority = StrictOrder::close(out.components.size(), pairs);

  ConstructionReport rep = make_report(name, mode.str(), mode.str());
  rep.notes.push_back("a component <c>_fail above each component rewrites its forbidden symbols");
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult pcd_to_cdfrc(const System& in, Mode mode) {
  const std::string name = "pcd-to-cdfrc";
  require_kind(in, {SystemKind::pcdgs}, name);
  const Mode::Kind kind = mode.kind();
  const bool t = kind == Mode::Kind::t;
  require_mode(t || kind == Mode::Kind::le || kind == Mode::Kind::star ||
                   ((kind == Mode::Kind::eq || kind == Mode::Kind::ge) && mode.k() == 1),
               name, mode);

  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::entry_cdgs, "cdfrc");
  const std::size_t n = in.components.size();
  std::vector<SymbolSet> blocking(n);
  bool approximate = false;
  for (std::size_t i = 0; i < n; ++i)
    blocking[i] = t ? useful_nonterminals(in.components[i]) : lhs_set(in.components[i]);
  for (std::size_t j = 0; j < n; ++j) {
    Component c = in.components[j];
    SymbolSet f;
    for (std::size_t i : in.priority.above(j)) {
      f = unite(std::move(f), blocking[i]);
      if (blocking[i] != lhs_set(in.components[i])) approximate = true;
    }
    c.entry = RcCondition{{}, std::move(f)};
    out.components.push_back(std::move(c));
  }

  ConstructionReport rep = make_report(name, mode.str(), mode.str());
  rep.notes.push_back(t ? "entries forbid the productive left-hand sides of higher components"
                        : "entries forbid the left-hand sides of higher components");
  if (approximate)
    rep.notes.push_back(
        "a higher component has unproductive left-hand sides; the entries only approximate it");
  return finish(std::move(out), in, fresh, rep);
}

}  // namespace rrw
