#pragma once

// Derivation semantics: per-component steps under rule regulation, the
// cooperation modes, entry conditions, component priorities, graph control,
// and bounded language enumeration.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrw/grammar.hpp"

namespace rrw {

/// Symbols are interned per engine; a sentential form is a string of ids.
using Sym = char32_t;
using Form = std::u32string;

struct StepBounds {
  std::size_t workspace = 16;          // max sentential-form length
  std::size_t step_budget = 10000000;  // rule applications per mode_apply
  std::size_t form_budget = 1000000;   // distinct forms per enumeration
};

struct Application {
  std::size_t rule = 0;
  std::size_t position = 0;

  friend bool operator==(const Application&, const Application&) = default;
};

struct Successor {
  Form form;
  Application via;
};

struct ModeResult {
  std::vector<Form> forms;  // sorted, duplicate free
  bool truncated = false;   // a form longer than the workspace was discarded
  bool budget_exceeded = false;

  bool complete() const { return !truncated && !budget_exceeded; }
};

struct ComponentStep {
  std::size_t component = 0;
  Form form;
};

struct SystemStepResult {
  std::vector<ComponentStep> successors;
  bool truncated = false;
  bool budget_exceeded = false;
};

struct GcConfig {
  Form form;
  std::size_t label = 0;  // index into System::gc_rules

  friend bool operator==(const GcConfig&, const GcConfig&) = default;
};

struct BoundedLanguage {
  std::vector<Word> words;  // shortlex sorted
  std::size_t max_len = 0;
  bool complete = false;
  bool truncated = false;
  bool budget_exceeded = false;
  std::size_t forms_explored = 0;

  bool contains(const Word& w) const;
};

/// One component activation (or, for gc systems, one graph-control step).
struct TraceStep {
  std::string component;  // component name, or the label of the gc rule used
  Mode mode = Mode::t();
  std::vector<Application> applications;
  Form form;               // form after the activation
  std::string next_label;  // gc only
};

struct DerivationTrace {
  Form start;
  std::string start_label;  // gc only
  std::vector<TraceStep> steps;
};

class Engine {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  /// The system must validate; throws rrw::Error otherwise.
  explicit Engine(System system);

  const System& system() const { return system_; }

  // ---- symbols and forms
  std::optional<Sym> symbol(std::string_view name) const;
  const std::string& name(Sym s) const { return names_[s]; }
  bool is_terminal(Sym s) const { return s >= nonterminal_count_; }
  bool is_terminal_form(const Form& f) const;

  /// Space separated symbol names; a token that is not a symbol name is split
  /// into single-character symbols ("BC" reads as B C). Throws on unknown names.
  Form parse_form(std::string_view text) const;
  Form to_form(const Word& w) const;
  Word to_word(const Form& f) const;
  std::string render(const Form& f) const;

  /// Lower bound on the length of any terminal word derivable from `f`
  /// (kUnbounded if none is derivable even without regulation).
  std::size_t weight(const Form& f) const;

  // ---- single component
  bool rule_applicable(std::size_t component, const Form& form, std::size_t rule) const;
  bool any_rule_applicable(std::size_t component, const Form& form) const;
  std::vector<Successor> component_successors(std::size_t component, const Form& form) const;
  ModeResult mode_apply(std::size_t component, const Form& form, Mode mode,
                        const StepBounds& bounds) const;

  // ---- whole system
  bool entry_allows(std::size_t component, const Form& form) const;
  SystemStepResult system_successors(const Form& form, Mode mode, const StepBounds& bounds) const;
  std::vector<GcConfig> gc_successors(const GcConfig& config) const;

  BoundedLanguage enumerate_language(Mode mode, std::size_t max_len,
                                     const StepBounds& bounds) const;
  std::optional<DerivationTrace> find_derivation(Mode mode, const Word& target,
                                                 const StepBounds& bounds) const;

  /// Re-executes a trace step by step; true iff every application is legal
  /// and reproduces the recorded forms.
  bool replay(const DerivationTrace& trace, Mode mode) const;

 private:
  struct CRule {
    Sym lhs = 0;
    Form rhs;
    std::vector<Sym> permit;
    std::vector<Sym> forbid;
    std::vector<Sym> blockers;  // lhs of strictly greater rules
  };
  struct CComponent {
    std::vector<CRule> rules;
    std::vector<Sym> entry_permit;
    std::vector<Sym> entry_forbid;
    std::vector<std::size_t> greater;  // pcdgs: components strictly above
  };
  struct CGcRule {
    CRule rule;
    std::vector<std::size_t> success;
    std::vector<std::size_t> failure;
  };
  struct Limits {
    std::size_t workspace;
    std::size_t weight_cap;
    std::size_t step_budget;
  };
  struct Presence;

  bool applicable(const CRule& r, const Presence& p) const;
  void successors_into(const CComponent& c, const Form& form, std::vector<Successor>& out) const;
  ModeResult apply_mode(std::size_t component, const Form& form, Mode mode,
                        const Limits& limits) const;
  /// Whether the component's mode relation from `form` is nonempty, ignoring
  /// weight pruning. `exact` is cleared when the answer relied on truncation.
  bool relation_nonempty(std::size_t component, const Form& form, Mode mode,
                         const Limits& limits, bool& exact) const;
  /// `skip` names a component whose activation is known to add nothing new.
  SystemStepResult step_system(const Form& form, Mode mode, const Limits& limits,
                               std::size_t skip = kUnbounded) const;
  BoundedLanguage enumerate_gc(std::size_t max_len, const StepBounds& bounds) const;
  std::optional<std::vector<Application>> explain_activation(std::size_t component,
                                                             const Form& from, const Form& to,
                                                             Mode mode,
                                                             const StepBounds& bounds) const;
  std::optional<DerivationTrace> find_gc_derivation(const Word& target,
                                                    const StepBounds& bounds) const;
  static Form apply_at(const Form& form, std::size_t pos, const Form& rhs);

  System system_;
  std::vector<std::string> names_;
  std::size_t nonterminal_count_ = 0;
  std::vector<std::size_t> min_yield_;
  std::vector<CComponent> components_;
  std::vector<CGcRule> gc_rules_;
  std::vector<std::size_t> init_labels_;
  std::vector<char> final_label_;
  Sym start_ = 0;
};

}  // namespace rrw
