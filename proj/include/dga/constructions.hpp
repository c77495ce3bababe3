#pragma once

#include <functional>

#include "dga/automaton.hpp"

namespace dga {

/// Recognizes the complement language. Syntactic DDGAs keep their diagram
/// and negate the acceptance condition; other automata also swap
/// existential and universal states.
Adga complement(const Adga& a);

/// Recognizes L(a1) ∪ L(a2). A new existential first round lets every node
/// pick a tagged copy of either automaton. Levels of the two copies are
/// aligned along a shortest common supersequence of their kind patterns,
/// with delay states bridging gaps. A node that sees a state of the other
/// copy moves to a permanent conflict state, and occurrence sets mixing both
/// copies reject.
Adga union_of(const Adga& a1, const Adga& a2);

enum class Combine { conjunction, disjunction };

/// Level-wise product of two synchronized automata. Conjunction requires
/// both operands to be nondeterministic (no universal states);
/// disjunction requires both to be syntactic DDGAs.
Adga product(const Adga& a1, const Adga& a2, Combine combine);

/// complement(union_of(complement(a1), complement(a2))).
Adga intersect_adga(const Adga& a1, const Adga& a2);

/// Recognizes h(L(a)) over h's target alphabet: every node first picks a
/// preimage of its label and then runs `a`.
Adga project(const Adga& a, const Projection& h);

/// Same automaton read over `nodes`: a node labeled b starts where `a`
/// would start on label g(b).
Adga relabel(const Adga& a, const SymbolSet& nodes, const std::function<SymbolId(SymbolId)>& g);

}  // namespace dga
