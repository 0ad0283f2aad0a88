#include <algorithm>
#include <sstream>

#include "construction_util.hpp"

namespace rrw {

// ---------------------------------------------------------------- shared pieces

FreshNames::FreshNames(const System& system) {
  taken_.insert(system.nonterminals.begin(), system.nonterminals.end());
  taken_.insert(system.terminals.begin(), system.terminals.end());
}

const std::string& FreshNames::get(const std::string& base, const std::string& category) {
  const std::string key = category + '\n' + base;
  auto it = by_key_.find(key);
  if (it != by_key_.end()) return it->second;
  std::string name = base;
  while (taken_.contains(name)) name += '$';
  taken_.insert(name);
  issued_.push_back(name);
  return by_key_.emplace(key, name).first->second;
}

bool FreshNames::is_fresh(const std::string& name) const {
  return std::find(issued_.begin(), issued_.end(), name) != issued_.end();
}

std::string ConstructionReport::str() const {
  std::ostringstream out;
  out << "construction: " << construction << '\n'
      << "input: " << kind_name(input_kind) << " in mode " << input_mode << '\n'
      << "output: " << kind_name(output_kind) << " in mode " << output_mode << '\n'
      << "fresh nonterminals: " << fresh_nonterminals << '\n'
      << "components: " << components << '\n'
      << "rules: " << rules << '\n'
      << "erasing rules: " << (output_erasing ? "yes" : "no") << '\n';
  for (const auto& n : notes) out << "note: " << n << '\n';
  return out.str();
}

namespace detail {

ConstructionResult finish(System out, const System& in, const FreshNames& fresh,
                          ConstructionReport report) {
  for (const auto& n : fresh.issued())
    if (std::find(out.nonterminals.begin(), out.nonterminals.end(), n) == out.nonterminals.end())
      out.nonterminals.push_back(n);
  out.non_erasing = in.non_erasing && !out.has_erasing_rule();
  out.default_mode = std::nullopt;
  report.input_kind = in.kind;
  report.output_kind = out.kind;
  report.fresh_nonterminals = out.nonterminals.size() - in.nonterminals.size();
  report.components = out.kind == SystemKind::gc ? 0 : out.components.size();
  report.rules = out.all_rules().size();
  report.output_erasing = out.has_erasing_rule();
  if (report.output_erasing && !in.has_erasing_rule())
    report.notes.push_back("output contains erasing rules although the input has none");
  const ValidationReport v = validate(out);
  if (!v.ok()) throw Error(report.construction + " produced an invalid system: " + v.str());
  return {std::move(out), std::move(report)};
}

void require_mode(bool ok, const std::string& construction, Mode mode) {
  if (!ok) throw ModeError(construction + ": mode " + mode.str() + " is not supported");
}

}  // namespace detail

using namespace detail;

// ---------------------------------------------------------------- order <-> frc

Component frc_to_ordered_component(const Component& component, const std::string& failure_symbol) {
  ComponentBuilder b(component.name);
  SymbolSet forbidden;
  std::set<std::string> labels;
  for (const auto& r : component.rules) {
    Rule plain = r;
    plain.forbid.clear();
    labels.insert(plain.label);
    b.append(std::move(plain));
    forbidden.insert(r.forbid.begin(), r.forbid.end());
  }
  for (const auto& x : forbidden) {
    Rule fail = make_rule(x, {failure_symbol});
    fail.label = "f$" + x;
    while (labels.contains(fail.label)) fail.label += '$';
    const std::size_t fi = b.add(std::move(fail));
    for (std::size_t ri = 0; ri < component.rules.size(); ++ri)
      if (component.rules[ri].forbid.contains(x)) b.greater(fi, ri);
  }
  return b.build();
}

Component ordered_to_frc_component(const Component& component) {
  Component out = component;
  out.order = StrictOrder{};
  for (auto [g, l] : component.order.pairs()) out.rules[l].forbid.insert(component.rules[g].lhs);
  return out;
}

ConstructionResult frc_to_ordered(const System& in, Mode mode) {
  const std::string name = "frc-to-ord";
  require_kind(in, {SystemKind::frccdgs}, name);
  require_mode(mode.kind() != Mode::Kind::t, name, mode);
  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::ocdgs, "ord");
  const std::string& xf = fresh.get("X$f");
  for (const auto& c : in.components) out.components.push_back(frc_to_ordered_component(c, xf));
  ConstructionReport rep = make_report(name, mode.str(), mode.str());
  rep.notes.push_back("every forbidden symbol X gets a rule X -> " + xf + " above the rules it blocks");
  return finish(std::move(out), in, fresh, rep);
}

ConstructionResult ordered_to_frc(const System& in, Mode mode) {
  const std::string name = "ord-to-frc";
  require_kind(in, {SystemKind::ocdgs, SystemKind::ordered, SystemKind::cdgs, SystemKind::cf},
               name);
  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::frccdgs, "frc");
  for (const auto& c : in.components) out.components.push_back(ordered_to_frc_component(c));
  ConstructionReport rep = make_report(name, mode.str(), mode.str());
  return finish(std::move(out), in, fresh, rep);
}

// ---------------------------------------------------------------- graph control

ConstructionResult gc_to_ocdgs(const System& in, Mode mode, bool compact) {
  const std::string name = "gc-to-ocdgs";
  require_kind(in, {SystemKind::gc}, name);
  require_mode((mode.kind() == Mode::Kind::eq || mode.kind() == Mode::Kind::ge) && mode.k() >= 2,
               name, mode);
  if (compact && mode != Mode::eq(2))
    throw ModeError(name + ": the compact variant is only sound in mode =2; an activation in " +
                    mode.str() + " may end right after erasing the label");
  FreshNames fresh(in);
  System out = derive_skeleton(in, SystemKind::ocdgs, compact ? "ocd_compact" : "ocd");
  out.start = fresh.get("S$0", "start");

  const auto& rules = in.gc_rules;
  const std::size_t m = rules.size();
  std::vector<std::string> lab(m), lab_hat(m);
  for (std::size_t i = 0; i < m; ++i) lab[i] = fresh.get(rules[i].label(), "label");
  if (!compact)
    for (std::size_t i = 0; i < m; ++i) lab_hat[i] = fresh.get(rules[i].label() + "$hat", "label-hat");
  std::map<std::string, std::string> hat;
  if (!compact)
    for (const auto& a : in.nonterminals) hat[a] = fresh.get(a + "$hat", "hat");
  auto label_index = [&](const std::string& l) {
    for (std::size_t i = 0; i < m; ++i)
      if (rules[i].label() == l) return i;
    throw UnknownLabel(l);
  };
  auto loop = [](const std::string& x) { return make_rule(x, {x}); };

  {
    ComponentBuilder p0("P0");
    for (const auto& l : in.init_labels) {
      const std::string& li = lab[label_index(l)];
      p0.add(make_rule(out.start, {li, in.start}));
      p0.add(loop(li));
    }
    if (p0.size() == 0) p0.add(loop(out.start));
    out.components.push_back(p0.build());
  }

  for (std::size_t i = 0; i < m; ++i) {
    const Rule& core = rules[i].core;
    std::vector<std::string> success, failure;
    for (const auto& l : rules[i].success) success.push_back(lab[label_index(l)]);
    for (const auto& l : rules[i].failure)
      if (l != rules[i].label()) failure.push_back(lab[label_index(l)]);

    if (compact) {
      ComponentBuilder c("step_" + rules[i].label());
      std::vector<std::size_t> top, bottom;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) top.push_back(c.add(loop(lab[j])));
      const std::size_t erase = c.add(make_rule(lab[i], {}));
      for (const auto& l : success) {
        Word rhs = core.rhs;
        rhs.push_back(l);
        bottom.push_back(c.add(make_rule(core.lhs, rhs)));
      }
      c.greater(top, {erase});
      c.greater({erase}, bottom);
      c.greater(top, bottom);
      out.components.push_back(c.build());
    } else {
      ComponentBuilder s1("hat_" + rules[i].label());
      std::vector<std::size_t> top;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) {
          top.push_back(s1.add(loop(lab[j])));
          top.push_back(s1.add(loop(lab_hat[j])));
        }
      for (const auto& a : in.nonterminals) top.push_back(s1.add(loop(hat.at(a))));
      const std::size_t mark = s1.add(make_rule(lab[i], {lab_hat[i]}));
      const std::size_t pick = s1.add(make_rule(core.lhs, {hat.at(core.lhs)}));
      s1.greater(top, {mark, pick});
      s1.greater(mark, pick);
      out.components.push_back(s1.build());

      ComponentBuilder s2("apply_" + rules[i].label());
      top.clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) top.push_back(s2.add(loop(lab_hat[j])));
        top.push_back(s2.add(loop(lab[j])));
      }
      const std::size_t apply = s2.add(make_rule(hat.at(core.lhs), core.rhs));
      std::vector<std::size_t> next;
      for (const auto& l : success) next.push_back(s2.add(make_rule(lab_hat[i], {l})));
      s2.greater(top, {apply});
      s2.greater(top, next);
      s2.greater({apply}, next);
      out.components.push_back(s2.build());
    }

    ComponentBuilder f("fail_" + rules[i].label());
    std::vector<std::size_t> top, next;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) top.push_back(f.add(loop(lab[j])));
    const std::size_t check = f.add(loop(core.lhs));
    for (const auto& l : failure) next.push_back(f.add(make_rule(lab[i], {l})));
    f.greater(top, {check});
    f.greater(top, next);
    f.greater({check}, next);
    out.components.push_back(f.build());
  }

  {
    ComponentBuilder end("Pend");
    std::vector<std::size_t> top, fin;
    for (const auto& a : in.nonterminals) top.push_back(end.add(loop(a)));
    if (!compact)
      for (const auto& a : in.nonterminals) top.push_back(end.add(loop(hat.at(a))));
    for (const auto& l : in.final_labels) {
      const std::string& lf = lab[label_index(l)];
      fin.push_back(end.add(make_rule(lf, {})));
      fin.push_back(end.add(loop(lf)));
    }
    end.greater(top, fin);
    out.components.push_back(end.build());
  }

  ConstructionReport rep = make_report(name, "graph control", mode.str());
  if (compact) rep.notes.push_back("success fields simulated by one erasing component per rule");
  rep.notes.push_back("labels are stripped from their own failure fields");
  return finish(std::move(out), in, fresh, rep);
}

// ---------------------------------------------------------------- t-mode to one ordered grammar

ConstructionResult ocdgs_t_to_ordered(const System& in) {
  const std::string name = "ocdgs-t-to-ord";
  require_kind(in, {SystemKind::ocdgs, SystemKind::cdgs}, name);
  FreshNames fresh(in);
  const std::size_t n = in.components.size();
  System out = derive_skeleton(in, SystemKind::ordered, "ord");
  out.nonterminals.clear();
  // Fresh names avoid the input alphabet, which the output does not contain.
  out.start = fresh.get(in.start + "$0", "start");

  auto idx = [](std::size_t i) { return std::to_string(i + 1); };
  auto mark = [&](const std::string& a, std::size_t i) -> const std::string& {
    return fresh.get(a + "$" + idx(i), "mark");
  };
  auto trans = [&](const std::string& a, std::size_t i, std::size_t j) -> const std::string& {
    return fresh.get(a + "$" + idx(i) + "to" + idx(j), "transition");
  };
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& a : in.nonterminals) mark(a, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& a : in.nonterminals) trans(a, i, j);

  auto h = [&](const Word& w, std::size_t i) {
    Word o;
    for (const auto& x : w) o.push_back(in.is_nonterminal(x) ? mark(x, i) : x);
    return o;
  };

  ComponentBuilder b("G");
  for (std::size_t i = 0; i < n; ++i) b.add(make_rule(out.start, {mark(in.start, i)}));

  std::vector<std::vector<std::size_t>> loops(n);                        // X_k -> X_k
  std::vector<std::vector<std::vector<std::size_t>>> tloops(n);          // X_{l->k} loops
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& x : in.nonterminals) loops[k].push_back(b.add(make_rule(mark(x, k), {mark(x, k)})));
    tloops[k].resize(n);
    for (std::size_t l = 0; l < n; ++l)
      for (const auto& x : in.nonterminals)
        tloops[k][l].push_back(b.add(make_rule(trans(x, k, l), {trans(x, k, l)})));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Component& c = in.components[i];
    std::vector<std::size_t> marked;
    for (const auto& r : c.rules) marked.push_back(b.append(make_rule(mark(r.lhs, i), h(r.rhs, i))));
    for (auto [g, l] : c.order.pairs()) b.greater(marked[g], marked[l]);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) b.greater(loops[k], marked);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<std::size_t> to_j;
      for (const auto& y : in.nonterminals) to_j.push_back(b.add(make_rule(mark(y, i), {trans(y, i, j)})));
      b.greater(marked, to_j);
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
          if (l != i && k != j) b.greater(tloops[l][k], to_j);
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<std::size_t> remark;
      for (const auto& y : in.nonterminals) remark.push_back(b.add(make_rule(trans(y, i, j), {mark(y, j)})));
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j) continue;
        b.greater(loops[l], remark);
        for (std::size_t k = 0; k < n; ++k) b.greater(tloops[k][l], remark);
      }
    }

  out.components.push_back(b.build());
  ConstructionReport rep = make_report(name, "t", "t");
  rep.notes.push_back("the output is an ordered grammar; t-mode of its single component equals its language");
  ConstructionResult res = finish(std::move(out), in, fresh, rep);
  res.report.fresh_nonterminals = res.system.nonterminals.size();
  return res;
}

}  // namespace rrw
