#pragma once

// Data model shared by every formalism in the workbench: context-free rules,
// strict orders, random-context conditions, components and whole systems.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rrw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class KindError : public Error {
 public:
  using Error::Error;
};

class ModeError : public Error {
 public:
  using Error::Error;
};

class PermitPresent : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

using SymbolSet = std::set<std::string>;

/// A terminal word or sentential form spelled with symbol names.
using Word = std::vector<std::string>;

/// Shortlex: shorter words first, ties broken lexicographically by symbol name.
bool shortlex_less(const Word& a, const Word& b);

/// Concatenates symbol names; falls back to space separation when any symbol is
/// longer than one character. The empty word renders as "eps".
std::string render_word(const Word& w);

/// Cooperation protocol of one component activation.
class Mode {
 public:
  enum class Kind { t, star, eq, le, ge };

  static Mode t() { return Mode(Kind::t, 1); }
  static Mode star() { return Mode(Kind::star, 1); }
  static Mode eq(unsigned k) { return Mode(Kind::eq, k); }
  static Mode le(unsigned k) { return Mode(Kind::le, k); }
  static Mode ge(unsigned k) { return Mode(Kind::ge, k); }

  /// Accepts `t`, `*`, `=k`, `<=k`, `>=k`.
  static Mode parse(std::string_view text);

  Kind kind() const { return kind_; }
  unsigned k() const { return k_; }
  std::string str() const;

  friend bool operator==(const Mode&, const Mode&) = default;

 private:
  Mode(Kind kind, unsigned k);
  Kind kind_;
  unsigned k_;
};

/// Transitively closed strict order over indices [0, size).
/// A pair (g, l) means element g is strictly greater than element l.
class StrictOrder {
 public:
  StrictOrder() = default;

  /// Throws IndexError for pairs outside [0, size) and CycleError when the
  /// closure is not irreflexive.
  static StrictOrder close(std::size_t size,
                           const std::set<std::pair<std::size_t, std::size_t>>& pairs);

  bool greater(std::size_t g, std::size_t l) const { return pairs_.contains({g, l}); }
  const std::set<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t size() const { return size_; }
  bool empty() const { return pairs_.empty(); }

  /// Elements strictly greater than `l`.
  std::vector<std::size_t> above(std::size_t l) const;

  /// Number of elements on the longest chain x1 > x2 > ... (0 for an empty domain).
  std::size_t longest_chain() const;

  friend bool operator==(const StrictOrder&, const StrictOrder&) = default;

 private:
  std::size_t size_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Free-function spelling of StrictOrder::close.
StrictOrder close_order(std::size_t size,
                        const std::set<std::pair<std::size_t, std::size_t>>& pairs);

struct RcCondition {
  SymbolSet permit;
  SymbolSet forbid;

  friend bool operator==(const RcCondition&, const RcCondition&) = default;
};

/// Context-free production A -> rhs. `permit`/`forbid` are only meaningful in
/// random-context systems; elsewhere they must stay empty.
struct Rule {
  std::string lhs;
  Word rhs;
  std::string label;
  SymbolSet permit;
  SymbolSet forbid;

  bool erasing() const { return rhs.empty(); }
  std::string str() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Component {
  std::string name;
  std::vector<Rule> rules;
  StrictOrder order;                 // ordered/ocdgs only
  std::optional<RcCondition> entry;  // entry-cdgs only

  std::optional<std::size_t> rule_index(std::string_view label) const;

  friend bool operator==(const Component&, const Component&) = default;
};

struct GcRule {
  Rule core;  // core.label is the rule's label
  std::vector<std::string> success;
  std::vector<std::string> failure;

  const std::string& label() const { return core.label; }

  friend bool operator==(const GcRule&, const GcRule&) = default;
};

enum class SystemKind { cf, ordered, cdgs, ocdgs, rccdgs, frccdgs, gc, entry_cdgs, pcdgs };

std::string_view kind_name(SystemKind kind);
std::optional<SystemKind> parse_kind(std::string_view text);

enum class Regulation { none, ordered, rc, frc };

Regulation regulation_of(SystemKind kind);

struct System {
  SystemKind kind = SystemKind::cdgs;
  std::string name = "g";
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  std::string start;
  std::vector<Component> components;  // non-gc kinds
  std::vector<GcRule> gc_rules;       // gc only
  std::vector<std::string> init_labels;
  std::vector<std::string> final_labels;
  StrictOrder priority;  // pcdgs only, over component indices
  bool non_erasing = false;
  std::optional<Mode> default_mode;

  bool is_nonterminal(std::string_view s) const;
  bool is_terminal(std::string_view s) const;
  bool has_erasing_rule() const;
  std::optional<std::size_t> component_index(std::string_view name) const;

  /// Every rule of the system in (component, index) order; gc cores included.
  std::vector<const Rule*> all_rules() const;

  friend bool operator==(const System&, const System&) = default;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
  std::string str() const;
};

/// Reports every violated structural invariant; never throws.
ValidationReport validate(const System& system);

}  // namespace rrw
