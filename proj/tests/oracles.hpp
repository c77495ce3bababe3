#pragma once

// Independent reference implementations used as test oracles. They work
// directly from the definitions and share no code with the library's
// evaluation paths.

#include <functional>
#include <vector>

#include "dga/automaton.hpp"
#include "dga/graph.hpp"

namespace oracle {

/// Acceptance by explicit enumeration of run DAGs: existential
/// configurations choose one successor, universal ones keep all, and the
/// run accepts iff every permanent sink is accepting. Exponential.
bool accepts_by_runs(const dga::Adga& a, const dga::LabeledGraph& g);

/// Labeled graphs with exactly n nodes, no isomorphism reduction.
void for_each_raw_graph(std::size_t labels, std::size_t n, bool self_loops,
                        const std::function<void(const dga::LabeledGraph&)>& visit);

/// Corpus of all labeled directed graphs with 1..n_max nodes, deduplicated
/// by comparing against every permutation of previously kept graphs.
std::vector<dga::LabeledGraph> corpus(std::size_t labels, std::size_t n_max);

/// Connected undirected graphs without self-loops, 1..n_max nodes, all labelings.
std::vector<dga::LabeledGraph> undirected_corpus(std::size_t labels, std::size_t n_max);

bool isomorphic(const dga::LabeledGraph& x, const dga::LabeledGraph& y);

bool k_colorable(const dga::Graph& g, std::size_t k);

}  // namespace oracle
