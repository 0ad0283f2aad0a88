#pragma once

// Bounded language comparison, an independent reference enumerator and the
// context-free usefulness test.

#include <cstddef>
#include <string>
#include <vector>

#include "rrw/engine.hpp"
#include "rrw/grammar.hpp"

namespace rrw {

/// Words up to `max_len` computed by a memoized recursive closure over named
/// forms. Shares no code with Engine; used to cross-check it.
BoundedLanguage reference_enumerate(const System& system, Mode mode, std::size_t max_len,
                                    const StepBounds& bounds = {});

struct EquivVerdict {
  bool equal = false;
  std::vector<Word> only_in_a;  // shortlex, at most kMaxDifferences
  std::vector<Word> only_in_b;
  bool complete_a = false;
  bool complete_b = false;
  std::string mode_a;
  std::string mode_b;
  std::size_t max_len = 0;
  std::size_t workspace = 0;

  static constexpr std::size_t kMaxDifferences = 20;

  std::string str() const;
};

/// Equal only when both enumerations are complete and their words coincide.
EquivVerdict bounded_equiv(const System& a, Mode mode_a, const System& b, Mode mode_b,
                           std::size_t max_len, const StepBounds& bounds = {});

/// Least fixpoint: A is useful when some rule A -> w has every symbol of w in
/// `terminals` or already useful.
SymbolSet useful_nonterminals(const std::vector<Rule>& rules, const SymbolSet& terminals);

/// Usefulness inside one component, where the terminals are the symbols of
/// its rules that occur on no left-hand side.
SymbolSet useful_nonterminals(const Component& component);

}  // namespace rrw
