#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dga {

using NodeId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Ordered finite set of symbols. Symbol ids are positions.
class SymbolSet {
 public:
  SymbolSet() = default;
  /// Throws DomainError on an empty list or duplicate names.
  explicit SymbolSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(SymbolId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<SymbolId> find(std::string_view name) const;
  /// Like find, but throws DomainError naming `what` when absent.
  SymbolId at(std::string_view name, std::string_view what = "symbol") const;

  friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Node alphabet (labels) and edge alphabet of a graph language.
struct Alphabets {
  SymbolSet nodes;
  SymbolSet edges;

  static Alphabets blank() { return {SymbolSet({"blank"}), SymbolSet({"blank"})}; }
  friend bool operator==(const Alphabets&, const Alphabets&) = default;
};

struct Edge {
  SymbolId symbol;
  NodeId from;
  NodeId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite directed multigraph with one edge relation per edge symbol.
/// Nodes are 0..n-1; self-loops are allowed. Immutable once built.
class Graph {
 public:
  Graph() : Graph(1, 1, {}) {}
  /// Throws DomainError if node_count is 0 or an edge is out of range.
  /// Duplicate edges are merged.
  Graph(std::size_t node_count, std::size_t edge_symbols, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_symbols() const { return edge_symbols_; }
  /// Sorted by (symbol, from, to).
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(SymbolId symbol, NodeId from, NodeId to) const;
  const std::vector<NodeId>& in_neighbors(SymbolId symbol, NodeId node) const {
    return incoming_[symbol * node_count_ + node];
  }
  /// Incoming neighbors over all edge symbols, sorted and unique.
  const std::vector<NodeId>& all_in_neighbors(NodeId node) const { return incoming_any_[node]; }

  /// Same graph with nodes renamed by `perm` (old id -> new id).
  Graph permuted(const std::vector<NodeId>& perm) const;
  /// Adds a copy of `node` carrying all of its incoming and outgoing edges.
  Graph with_duplicate(NodeId node) const;
  /// Mirror every edge.
  Graph symmetrized() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edge_symbols_ == b.edge_symbols_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_;
  std::size_t edge_symbols_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> incoming_;
  std::vector<std::vector<NodeId>> incoming_any_;
};

/// A graph with a total node labeling (symbol ids of some node alphabet).
struct LabeledGraph {
  Graph graph;
  std::vector<SymbolId> labels;

  LabeledGraph() : labels{0} {}
  /// Throws DomainError unless labels has one entry per node.
  LabeledGraph(Graph g, std::vector<SymbolId> l);

  std::size_t node_count() const { return graph.node_count(); }
  LabeledGraph permuted(const std::vector<NodeId>& perm) const;
  LabeledGraph with_duplicate(NodeId node) const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

/// Total map between node alphabets.
class Projection {
 public:
  Projection(SymbolSet source, SymbolSet target, std::vector<SymbolId> mapping);

  const SymbolSet& source() const { return source_; }
  const SymbolSet& target() const { return target_; }
  SymbolId operator()(SymbolId a) const;
  const std::vector<SymbolId>& mapping() const { return mapping_; }

 private:
  SymbolSet source_;
  SymbolSet target_;
  std::vector<SymbolId> mapping_;
};

bool is_undirected(const Graph& g);
/// Weak connectivity; single-node graphs are connected.
bool is_connected(const Graph& g);
/// Relabels every node through h; throws DomainError for labels outside h's source.
LabeledGraph apply_projection(const Projection& h, const LabeledGraph& g);
/// No γ-edge joins equally labeled nodes (so self-loops always fail).
bool is_valid_coloring(const LabeledGraph& g);
/// Exhaustive search over k^n labelings.
bool is_k_colorable(const Graph& g, std::size_t k);

/// Encoding that is equal for two labeled graphs iff they are isomorphic.
/// Minimizes over all n! node orders; meant for n <= 8.
std::string canonical_form(const LabeledGraph& g);
std::string canonical_form(const Graph& g);
/// Permutations (old id -> new id) mapping g onto itself.
std::vector<std::vector<NodeId>> automorphisms(const Graph& g);

enum class EnumerationMode { all_directed, connected_undirected };

struct EnumerationOptions {
  EnumerationMode mode = EnumerationMode::all_directed;
  bool dedup = true;
  bool self_loops = true;
};

/// Calls `visit` for every graph structure with exactly `n` nodes, in
/// ascending order of adjacency bits. With dedup, only the first member of
/// each isomorphism class is visited. `visit` returns false to stop;
/// the function returns false iff stopped.
bool for_each_structure(std::size_t n, std::size_t edge_symbols, const EnumerationOptions& opts,
                        const std::function<bool(const Graph&)>& visit);

/// Labeled graphs with 1..n_max nodes: node count ascending, then structures,
/// then labelings in lexicographic order. With dedup, exactly one
/// representative per isomorphism class of labeled graphs.
bool for_each_labeled_graph(std::size_t label_count, std::size_t edge_symbols, std::size_t n_max,
                            const EnumerationOptions& opts,
                            const std::function<bool(const LabeledGraph&)>& visit);

/// Same, restricted to exactly n nodes.
bool for_each_labeled_graph_of_order(std::size_t label_count, std::size_t edge_symbols, std::size_t n,
                                     const EnumerationOptions& opts,
                                     const std::function<bool(const LabeledGraph&)>& visit);

std::vector<LabeledGraph> enumerate_graphs(std::size_t label_count, std::size_t edge_symbols, std::size_t n_max,
                                           const EnumerationOptions& opts);

/// Graph text format:
///   graph / nodes <n> / labels <sym...> / edge <γ> <u> <v> / undirected
LabeledGraph parse_graph(std::string_view text, const Alphabets& alphabets, std::string_view source = {});
/// Parses without a fixed alphabet: node and edge symbols are collected in
/// order of first appearance.
std::pair<LabeledGraph, Alphabets> parse_graph_infer(std::string_view text, std::string_view source = {});
std::string format_graph(const LabeledGraph& g, const Alphabets& alphabets);

}  // namespace dga
