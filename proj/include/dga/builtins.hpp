#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dga/automaton.hpp"

namespace dga {

/// Complete deterministic word automaton.
struct Dfa {
  SymbolSet alphabet;
  std::vector<std::string> states;
  std::size_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<std::size_t>> delta;  // delta[state][symbol]

  bool accepts(const std::vector<SymbolId>& word) const;
};

/// DFA text format:
///   dfa / alphabet <syms...> / states <names...> / start <state> /
///   accept <states...> / delta <state> <sym> <state>
Dfa parse_dfa(std::string_view text, std::string_view source = {});
/// Words over {a,b} with an even number of a's.
Dfa even_a_dfa();

namespace builtins {

/// 3-colorability guess-and-check NDGA over blank graphs.
Adga color3();
/// Its dual: the same diagram with existential and universal states swapped.
Adga not_color3();
/// Valid 3-colorings over {a,b,c} with a unique a-node whose undirected
/// neighborhood is b-labeled and which has at least two incoming neighbors.
Adga centric();
/// Graphs with at most k nodes (alternating).
Adga order_le(std::size_t k);
/// Graphs with at least k nodes (nondeterministic).
Adga order_ge(std::size_t k);
/// Labelings that are valid colorings (deterministic, length 1).
Adga colored(const SymbolSet& sigma);
/// Labelings in which every symbol occurs (length 0).
Adga occur(const SymbolSet& sigma);
/// Guess-and-check NDGA of length 2 accepting the directed path encodings
/// of words accepted by `dfa`.
Adga word_dfa(const Dfa& dfa);
/// Length-0 automaton with one permanent state that accepts (or rejects) everything.
Adga trivial(bool accept);

}  // namespace builtins

/// Builds a registry automaton from `name[:params]`: color3, not_color3,
/// centric, order_le:k, order_ge:k, colored:a,b,..., occur:a,b,...,
/// trivial:accept|reject, word_dfa:<dfa file>.
Adga builtin(std::string_view spec);
std::vector<std::string> builtin_names();

/// Named automata used by property tests, all over small alphabets.
std::vector<std::pair<std::string, Adga>> registry();

/// The five-node {a,b,c}-labeled graph on which `centric` has an accepting
/// run with eight first-round choices and a two-way universal split.
LabeledGraph centric_example_graph();

/// Directed path u_0 -> u_1 -> ... labeled by the word.
LabeledGraph word_graph(const std::vector<SymbolId>& word);

}  // namespace dga
