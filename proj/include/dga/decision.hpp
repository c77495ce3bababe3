#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "dga/automaton.hpp"
#include "dga/graph.hpp"

namespace dga {

using BigInt = boost::multiprecision::cpp_int;

/// Node-count ceiling above which an accepted graph can be shrunk. Values
/// wider than the configured number of bits are reported as overflow.
struct EmptinessBound {
  std::optional<BigInt> value;
  bool overflow() const { return !value.has_value(); }
  /// True when n is known to reach the bound.
  bool reached_by(std::size_t n) const { return value && BigInt(n) >= *value; }
  std::string to_string() const;
};

/// |Q|^(len+1) for all directed graphs, (|Q| * 2^(|Γ||Q|))^(len+1) for
/// connected undirected graphs. Throws ClassError unless `a` is an NDGA.
EmptinessBound emptiness_bound(const Adga& a, EnumerationMode mode, std::size_t max_bits = 1u << 16);

struct SearchOptions {
  EnumerationMode mode = EnumerationMode::all_directed;
  std::size_t n_cap = 6;
  bool dedup = true;
  bool self_loops = true;
  unsigned jobs = 1;
  /// Allows searching alternating automata. The result is never exact.
  bool bounded_probe = false;
};

/// Either a member of the language or the largest node count searched.
struct SearchOutcome {
  std::optional<LabeledGraph> counterexample;
  std::size_t n_checked = 0;
  bool exact = false;

  bool found() const { return counterexample.has_value(); }
};

/// Searches graphs by increasing node count up to min(n_cap, bound) and
/// returns the first accepted one, which therefore has the fewest nodes.
/// Throws ClassError for alternating automata unless bounded_probe is set,
/// since their emptiness problem is undecidable.
SearchOutcome find_member(const Adga& a, const SearchOptions& opts = {});

struct InclusionResult {
  bool holds = false;
  bool exact = false;
  std::size_t n_checked = 0;
  /// Accepted by the first automaton and rejected by the second.
  std::optional<LabeledGraph> violation;
};

/// L(a1) ⊆ L(a2) for syntactic DDGAs, by searching the product of a1 with
/// the complement of a2. Throws ClassError or DomainError on mismatched
/// classes or alphabets.
InclusionResult inclusion_ddga(const Adga& a1, const Adga& a2, const SearchOptions& opts = {});

struct EquivalenceResult {
  InclusionResult forward;
  InclusionResult backward;

  bool equivalent() const { return forward.holds && backward.holds; }
  bool exact() const { return forward.exact && backward.exact; }
};

EquivalenceResult equivalence_ddga(const Adga& a1, const Adga& a2, const SearchOptions& opts = {});

}  // namespace dga
