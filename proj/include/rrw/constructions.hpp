#pragma once

// Grammar-to-grammar simulations between the regulated formalisms. Each
// construction returns the new system together with a report describing it.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rrw/grammar.hpp"

namespace rrw {

/// Deterministic supply of decorated names disjoint from a reserved alphabet.
/// Decorations use '$' ("A$1", "X$f"); a clash appends further '$' characters.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const System& system);

  void reserve(const std::string& name) { taken_.insert(name); }

  /// The name for `base` within `category`; repeated requests return the same
  /// name, distinct requests never share one.
  const std::string& get(const std::string& base, const std::string& category = "");

  const std::vector<std::string>& issued() const { return issued_; }
  bool is_fresh(const std::string& name) const;

 private:
  std::set<std::string> taken_;
  std::map<std::string, std::string> by_key_;
  std::vector<std::string> issued_;
};

struct ConstructionReport {
  std::string construction;
  SystemKind input_kind = SystemKind::cdgs;
  SystemKind output_kind = SystemKind::cdgs;
  std::string input_mode;   // mode the input is read in; "any" when irrelevant
  std::string output_mode;  // mode under which the output simulates the input
  std::size_t fresh_nonterminals = 0;
  std::size_t components = 0;
  std::size_t rules = 0;
  bool output_erasing = false;
  std::vector<std::string> notes;

  std::string str() const;
};

struct ConstructionResult {
  System system;
  ConstructionReport report;
};

// ---- ordering and forbidden context

/// Adds X -> X_f above every rule whose forbidden set contains X.
Component frc_to_ordered_component(const Component& component, const std::string& failure_symbol);

/// Forbids, for every rule, the left-hand sides of all strictly greater rules.
Component ordered_to_frc_component(const Component& component);

/// frccdgs -> ocdgs, component by component. Not valid for t-mode.
ConstructionResult frc_to_ordered(const System& frccd, Mode mode = Mode::star());

/// ocdgs (or ordered grammar) -> frccdgs. Valid for every mode.
ConstructionResult ordered_to_frc(const System& ocdgs, Mode mode = Mode::t());

// ---- graph control and t-mode

/// Graph-controlled grammar with appearance checking -> ocdgs under `mode`,
/// which must be =k or >=k with k >= 2.
ConstructionResult gc_to_ocdgs(const System& gc, Mode mode, bool compact_erasing = false);

/// ocdgs read in t-mode -> single-component ordered grammar.
ConstructionResult ocdgs_t_to_ordered(const System& ocdgs);

// ---- forbidden random context systems

/// Merges all components; only for <=k, *, =1 and >=1.
ConstructionResult frccd_collapse_to_single(const System& frccd, Mode mode);

/// frccdgs read in =k or >=k (k >= 2) -> frccdgs read in =2.
ConstructionResult frccd_to_eq2(const System& frccd, Mode input_mode);

/// frccdgs read in =2 -> frccdgs read in =k or >=k (k >= 3).
ConstructionResult frccd_eq2_to_k(const System& frccd, Mode output_mode);

// ---- entry conditions

/// Entry-condition system with forbidding entries -> frccdgs, same mode.
/// Supported modes: t, * and >=k.
ConstructionResult cdfrc_to_frccd(const System& entry_cdgs, Mode mode);

/// frccdgs read in =2 -> entry-condition system read in =2. With `normalized`,
/// every component has exactly two rules.
ConstructionResult frccd_eq2_to_cdfrc(const System& frccd, bool normalized = false);

/// Normalized entry-condition system read in =2 -> the same read in =k, k >= 3.
ConstructionResult cdfrc_eq2_to_eqk(const System& entry_cdgs, unsigned k);

/// Entry-condition system read in >=k (k >= 2) -> the same read in >=2.
ConstructionResult cdfrc_geqk_to_geq2(const System& entry_cdgs, unsigned k);

// ---- priorities

/// Entry-condition system -> pcdgs, for every mode.
ConstructionResult cdfrc_to_pcd(const System& entry_cdgs, Mode mode);

/// pcdgs -> entry-condition system; modes <=k, *, =1, >=1 and t.
ConstructionResult pcd_to_cdfrc(const System& pcd, Mode mode);

// ---- command-line registry

struct ConstructionOptions {
  std::optional<Mode> mode;         // input mode (or output mode for frccd-eq2-to-k)
  std::optional<unsigned> k;        // counter bound where the construction takes one
  bool compact_erasing = false;     // gc-to-ocdgs
  bool normalized = false;          // frccd-eq2-to-cdfrc
};

struct ConstructionInfo {
  std::string id;
  std::vector<SystemKind> input_kinds;
  std::string summary;
  /// Parameter choices exercised by the differential tests.
  std::vector<ConstructionOptions> samples;
};

const std::vector<ConstructionInfo>& construction_catalog();

/// Dispatches by CLI identifier; throws rrw::Error for an unknown id.
ConstructionResult run_construction(std::string_view id, const System& input,
                                    const ConstructionOptions& options);

}  // namespace rrw
