#include <functional>

#include "construction_util.hpp"

namespace rrw {

namespace {

using Runner = std::function<ConstructionResult(const System&, const ConstructionOptions&)>;

struct Entry {
  ConstructionInfo info;
  Runner run;
};

ConstructionOptions with_mode(Mode m) {
  ConstructionOptions o;
  o.mode = m;
  return o;
}

ConstructionOptions with_k(unsigned k) {
  ConstructionOptions o;
  o.k = k;
  return o;
}

std::vector<ConstructionOptions> modes(std::initializer_list<const char*> texts) {
  std::vector<ConstructionOptions> out;
  for (const char* t : texts) out.push_back(with_mode(Mode::parse(t)));
  return out;
}

Mode mode_or(const ConstructionOptions& o, Mode fallback) { return o.mode.value_or(fallback); }

unsigned k_or(const ConstructionOptions& o, unsigned fallback) {
  if (o.k) return *o.k;
  if (o.mode && o.mode->kind() != Mode::Kind::t && o.mode->kind() != Mode::Kind::star)
    return o.mode->k();
  return fallback;
}

const std::vector<Entry>& entries() {
  using K = SystemKind;
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({{"frc-to-ord", {K::frccdgs}, "forbidden context components to ordered components",
                  modes({"*", "=1", "=2", "<=2", ">=2"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return frc_to_ordered(s, mode_or(o, Mode::star()));
                 }});
    t.push_back({{"ord-to-frc", {K::ocdgs, K::ordered, K::cdgs, K::cf},
                  "ordered components to forbidden context components", modes({"t", "*", "=2", ">=2"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return ordered_to_frc(s, mode_or(o, Mode::t()));
                 }});
    {
      auto samples = modes({"=2", "=3", ">=2", ">=3"});
      ConstructionOptions compact = with_mode(Mode::eq(2));
      compact.compact_erasing = true;
      samples.push_back(compact);
      t.push_back({{"gc-to-ocdgs", {K::gc}, "graph control with appearance checking to ocdgs",
                    samples},
                   [](const System& s, const ConstructionOptions& o) {
                     return gc_to_ocdgs(s, mode_or(o, Mode::eq(2)), o.compact_erasing);
                   }});
    }
    t.push_back({{"ocdgs-t-to-ord", {K::ocdgs}, "ocdgs in t-mode to one ordered grammar",
                  modes({"t"})},
                 [](const System& s, const ConstructionOptions&) { return ocdgs_t_to_ordered(s); }});
    t.push_back({{"frccd-merge", {K::frccdgs}, "merge all frc components into one",
                  modes({"*", "<=2", "=1", ">=1"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return frccd_collapse_to_single(s, mode_or(o, Mode::star()));
                 }});
    t.push_back({{"frccd-to-eq2", {K::frccdgs}, "frccdgs in =k or >=k to frccdgs in =2",
                  modes({"=2", "=3", ">=2", ">=3"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return frccd_to_eq2(s, mode_or(o, Mode::eq(k_or(o, 2))));
                 }});
    t.push_back({{"frccd-eq2-to-k", {K::frccdgs}, "frccdgs in =2 to frccdgs in =k or >=k",
                  modes({"=3", ">=3", "=4"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return frccd_eq2_to_k(s, mode_or(o, Mode::eq(k_or(o, 3))));
                 }});
    t.push_back({{"cdfrc-to-frccd", {K::entry_cdgs}, "forbidding entry conditions to frccdgs",
                  modes({"t", "*", ">=2"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return cdfrc_to_frccd(s, mode_or(o, Mode::t()));
                 }});
    {
      ConstructionOptions plain = with_mode(Mode::eq(2));
      ConstructionOptions norm = plain;
      norm.normalized = true;
      t.push_back({{"frccd-eq2-to-cdfrc", {K::frccdgs}, "frccdgs in =2 to entry conditions in =2",
                    {plain, norm}},
                   [](const System& s, const ConstructionOptions& o) {
                     return frccd_eq2_to_cdfrc(s, o.normalized);
                   }});
    }
    t.push_back({{"cdfrc-eq2-to-eqk", {K::entry_cdgs},
                  "two-rule entry-condition system in =2 to =k", {with_k(3), with_k(4)}},
                 [](const System& s, const ConstructionOptions& o) {
                   return cdfrc_eq2_to_eqk(s, k_or(o, 3));
                 }});
    t.push_back({{"cdfrc-to-pcd", {K::entry_cdgs}, "forbidding entry conditions to priorities",
                  modes({"t", "*", "=1", "=2", "<=2", ">=2"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return cdfrc_to_pcd(s, mode_or(o, Mode::t()));
                 }});
    t.push_back({{"pcd-to-cdfrc", {K::pcdgs}, "priorities to forbidding entry conditions",
                  modes({"t", "*", "=1", "<=2", ">=1"})},
                 [](const System& s, const ConstructionOptions& o) {
                   return pcd_to_cdfrc(s, mode_or(o, Mode::t()));
                 }});
    t.push_back({{"cdfrc-geqk-to-geq2", {K::entry_cdgs},
                  "entry-condition system in >=k to >=2", {with_k(2), with_k(3)}},
                 [](const System& s, const ConstructionOptions& o) {
                   return cdfrc_geqk_to_geq2(s, k_or(o, 2));
                 }});
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<ConstructionInfo>& construction_catalog() {
  static const std::vector<ConstructionInfo> catalog = [] {
    std::vector<ConstructionInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

ConstructionResult run_construction(std::string_view id, const System& input,
                                    const ConstructionOptions& options) {
  for (const auto& e : entries())
    if (e.info.id == id) return e.run(input, options);
  throw Error("unknown construction '" + std::string(id) + "'");
}

}  // namespace rrw
