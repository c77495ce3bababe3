#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dga/assertion.hpp"
#include "dga/automaton.hpp"
#include "dga/dpl.hpp"

namespace dga {

enum class VcKind { entry, preservation, exit, weaken };
const char* to_string(VcKind k);

/// Verification condition L(lhs) ⊆ L(rhs) on connected undirected graphs.
/// `lhs` recognizes `assumption`; `rhs` recognizes the graphs on which
/// running `rounds` in order yields a state satisfying `goal`.
struct Vc {
  VcKind kind;
  std::size_t line;
  Assertion assumption;
  std::vector<LocalBlock> rounds;
  Assertion goal;
  Adga lhs;
  Adga rhs;
};

/// Backward pass from the postcondition. Rounds are folded into the
/// required automaton by wp_round; an inline assert emits a weaken
/// condition; a loop emits its exit and preservation conditions; the
/// precondition emits the entry condition. Returned in program order.
std::vector<Vc> vcgen(const DplProgram& p);

/// True iff `g` satisfies the assumption and the state reached by running
/// the rounds violates the goal, both checked by direct evaluation.
bool replays(const Vc& vc, const ValuationSpace& space, const LabeledGraph& g);

struct VcResult {
  bool holds = false;
  /// The search reached the theoretical node-count bound.
  bool exact = false;
  std::size_t n_checked = 0;
  std::optional<LabeledGraph> violation;
};

struct VcReport {
  std::vector<Vc> vcs;
  std::vector<VcResult> results;
  bool verified() const;
  bool exact() const;
};

struct CheckOptions {
  std::size_t n_cap = 4;
  unsigned jobs = 1;
  bool dedup = true;
};

/// Discharges every condition by bounded inclusion over connected
/// undirected graphs without self-loops.
VcReport check(const DplProgram& p, const CheckOptions& opts = {});
VcResult discharge(const Vc& vc, const CheckOptions& opts = {});

/// One line per condition, `VC <kind> L<line>: HOLDS exact=<bool>` or
/// `VC <kind> L<line>: VIOLATION` followed by the counterexample in graph
/// format, with `#` comment lines naming the failed assertion and showing
/// the state after each round.
std::string format_report(const DplProgram& p, const VcReport& r);

}  // namespace dga
