#include "dga/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dga/error.hpp"
#include "text_util.hpp"

namespace dga {

SymbolSet::SymbolSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw DomainError("alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("alphabet symbols must be nonempty");
    if (!seen.insert(n).second) throw DomainError("duplicate alphabet symbol '" + n + "'");
  }
}

std::optional<SymbolId> SymbolSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<SymbolId>(i);
  return std::nullopt;
}

SymbolId SymbolSet::at(std::string_view name, std::string_view what) const {
  if (auto id = find(name)) return *id;
  throw DomainError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

Graph::Graph(std::size_t node_count, std::size_t edge_symbols, std::vector<Edge> edges)
    : node_count_(node_count), edge_symbols_(edge_symbols), edges_(std::move(edges)) {
  if (node_count_ == 0) throw DomainError("graphs must have at least one node");
  if (edge_symbols_ == 0) throw DomainError("edge alphabet must be nonempty");
  for (const auto& e : edges_) {
    if (e.symbol >= edge_symbols_) throw DomainError("edge symbol out of range");
    if (e.from >= node_count_ || e.to >= node_count_) throw DomainError("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  incoming_.assign(edge_symbols_ * node_count_, {});
  incoming_any_.assign(node_count_, {});
  for (const auto& e : edges_) {
    incoming_[e.symbol * node_count_ + e.to].push_back(e.from);
    incoming_any_[e.to].push_back(e.from);
  }
  for (auto& v : incoming_any_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

bool Graph::has_edge(SymbolId symbol, NodeId from, NodeId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{symbol, from, to});
}

Graph Graph::permuted(const std::vector<NodeId>& perm) const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back({e.symbol, perm.at(e.from), perm.at(e.to)});
  return Graph(node_count_, edge_symbols_, std::move(out));
}

Graph Graph::with_duplicate(NodeId node) const {
  const auto copy = static_cast<NodeId>(node_count_);
  std::vector<Edge> out = edges_;
  for (const auto& e : edges_) {
    if (e.from == node && e.to == node) {
      // The copy is a twin: it sees the original and itself exactly as the original does.
      out.push_back({e.symbol, copy, copy});
      out.push_back({e.symbol, copy, node});
      out.push_back({e.symbol, node, copy});
    } else if (e.from == node) {
      out.push_back({e.symbol, copy, e.to});
    } else if (e.to == node) {
      out.push_back({e.symbol, e.from, copy});
    }
  }
  return Graph(node_count_ + 1, edge_symbols_, std::move(out));
}

Graph Graph::symmetrized() const {
  std::vector<Edge> out = edges_;
  for (const auto& e : edges_) out.push_back({e.symbol, e.to, e.from});
  return Graph(node_count_, edge_symbols_, std::move(out));
}

LabeledGraph::LabeledGraph(Graph g, std::vector<SymbolId> l) : graph(std::move(g)), labels(std::move(l)) {
  if (labels.size() != graph.node_count()) throw DomainError("labeling must cover every node exactly once");
}

LabeledGraph LabeledGraph::permuted(const std::vector<NodeId>& perm) const {
  std::vector<SymbolId> out(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) out[perm.at(v)] = labels[v];
  return LabeledGraph(graph.permuted(perm), std::move(out));
}

LabeledGraph LabeledGraph::with_duplicate(NodeId node) const {
  std::vector<SymbolId> out = labels;
  out.push_back(labels.at(node));
  return LabeledGraph(graph.with_duplicate(node), std::move(out));
}

Projection::Projection(SymbolSet source, SymbolSet target, std::vector<SymbolId> mapping)
    : source_(std::move(source)), target_(std::move(target)), mapping_(std::move(mapping)) {
  if (mapping_.size() != source_.size()) throw DomainError("projection must be total over its source alphabet");
  for (SymbolId b : mapping_)
    if (b >= target_.size()) throw DomainError("projection maps outside its target alphabet");
}

SymbolId Projection::operator()(SymbolId a) const {
  if (a >= mapping_.size()) throw DomainError("label outside the projection's source alphabet");
  return mapping_[a];
}

bool is_undirected(const Graph& g) {
  for (const auto& e : g.edges())
    if (!g.has_edge(e.symbol, e.to, e.from)) return false;
  return true;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

LabeledGraph apply_projection(const Projection& h, const LabeledGraph& g) {
  std::vector<SymbolId> out;
  out.reserve(g.labels.size());
  for (SymbolId a : g.labels) out.push_back(h(a));
  return LabeledGraph(g.graph, std::move(out));
}

bool is_valid_coloring(const LabeledGraph& g) {
  for (const auto& e : g.graph.edges())
    if (g.labels[e.from] == g.labels[e.to]) return false;
  return true;
}

bool is_k_colorable(const Graph& g, std::size_t k) {
  if (k == 0) return false;
  const std::size_t n = g.node_count();
  std::vector<SymbolId> labels(n, 0);
  while (true) {
    LabeledGraph lg(g, labels);
    if (is_valid_coloring(lg)) return true;
    std::size_t i = 0;
    while (i < n && ++labels[i] == k) labels[i++] = 0;
    if (i == n) return false;
  }
}

namespace {

// Encoding of g under perm: node count, labels in new order, then the
// adjacency relation as one byte per (symbol, u, v) triple.
void encode(const Graph& g, const std::vector<SymbolId>* labels, const std::vector<NodeId>& perm, std::string& out) {
  const std::size_t n = g.node_count();
  out.assign(1 + (labels ? n * 4 : 0) + g.edge_symbols() * n * n, '\0');
  out[0] = static_cast<char>(n);
  std::size_t base = 1;
  if (labels) {
    for (std::size_t v = 0; v < n; ++v) {
      const SymbolId a = (*labels)[v];
      const std::size_t at = base + perm[v] * 4;
      out[at] = static_cast<char>((a >> 24) & 0xff);
      out[at + 1] = static_cast<char>((a >> 16) & 0xff);
      out[at + 2] = static_cast<char>((a >> 8) & 0xff);
      out[at + 3] = static_cast<char>(a & 0xff);
    }
    base += n * 4;
  }
  for (const auto& e : g.edges()) out[base + (e.symbol * n + perm[e.from]) * n + perm[e.to]] = 1;
}

std::string canonical(const Graph& g, const std::vector<SymbolId>* labels) {
  std::vector<NodeId> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  std::string cur;
  bool first = true;
  do {
    encode(g, labels, perm, cur);
    if (first || cur < best) {
      best = cur;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::string canonical_form(const LabeledGraph& g) { return canonical(g.graph, &g.labels); }
std::string canonical_form(const Graph& g) { return canonical(g, nullptr); }

std::vector<std::vector<NodeId>> automorphisms(const Graph& g) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (const auto& e : g.edges()) {
      if (!g.has_edge(e.symbol, perm[e.from], perm[e.to])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool for_each_structure(std::size_t n, std::size_t edge_symbols, const EnumerationOptions& opts,
                        const std::function<bool(const Graph&)>& visit) {
  if (n == 0) return true;
  // Candidate edge slots, in the order that defines "adjacency bits".
  std::vector<std::pair<NodeId, NodeId>> slots;
  if (opts.mode == EnumerationMode::all_directed) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        if (u != v || opts.self_loops) slots.emplace_back(u, v);
  } else {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u; v < n; ++v)
        if (u != v || opts.self_loops) slots.emplace_back(u, v);
  }
  const std::size_t bits = slots.size() * edge_symbols;
  if (bits >= 63) throw DomainError("graph enumeration space too large");
  const bool undirected = opts.mode == EnumerationMode::connected_undirected;
  std::unordered_set<std::string> seen;
  std::vector<Edge> edges;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    edges.clear();
    for (std::size_t b = 0; b < bits; ++b) {
      if (((mask >> b) & 1U) == 0) continue;
      const auto symbol = static_cast<SymbolId>(b / slots.size());
      const auto [u, v] = slots[b % slots.size()];
      edges.push_back({symbol, u, v});
      if (undirected && u != v) edges.push_back({symbol, v, u});
    }
    Graph g(n, edge_symbols, edges);
    if (undirected && !is_connected(g)) continue;
    if (opts.dedup && !seen.insert(canonical_form(g)).second) continue;
    if (!visit(g)) return false;
  }
  return true;
}

bool for_each_labeled_graph_of_order(std::size_t label_count, std::size_t edge_symbols, std::size_t n,
                                     const EnumerationOptions& opts,
                                     const std::function<bool(const LabeledGraph&)>& visit) {
  if (label_count == 0) throw DomainError("node alphabet must be nonempty");
  return for_each_structure(n, edge_symbols, opts, [&](const Graph& g) {
    std::vector<std::vector<NodeId>> autos;
    if (opts.dedup) {
      autos = automorphisms(g);
      autos.erase(autos.begin());  // identity comes first in lexicographic order
    }
    std::vector<SymbolId> labels(n, 0);
    std::vector<SymbolId> image(n);
    while (true) {
      // Keep the lexicographically least labeling of each automorphism orbit.
      bool least = true;
      for (const auto& p : autos) {
        for (std::size_t v = 0; v < n; ++v) image[p[v]] = labels[v];
        if (std::lexicographical_compare(image.begin(), image.end(), labels.begin(), labels.end())) {
          least = false;
          break;
        }
      }
      if (least && !visit(LabeledGraph(g, labels))) return false;
      // Increment, most significant position first, so order is lexicographic.
      std::size_t i = n;
      while (i > 0 && ++labels[i - 1] == label_count) labels[--i] = 0;
      if (i == 0) return true;
    }
  });
}

bool for_each_labeled_graph(std::size_t label_count, std::size_t edge_symbols, std::size_t n_max,
                            const EnumerationOptions& opts,
                            const std::function<bool(const LabeledGraph&)>& visit) {
  for (std::size_t n = 1; n <= n_max; ++n)
    if (!for_each_labeled_graph_of_order(label_count, edge_symbols, n, opts, visit)) return false;
  return true;
}

std::vector<LabeledGraph> enumerate_graphs(std::size_t label_count, std::size_t edge_symbols, std::size_t n_max,
                                           const EnumerationOptions& opts) {
  std::vector<LabeledGraph> out;
  for_each_labeled_graph(label_count, edge_symbols, n_max, opts, [&](const LabeledGraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

namespace {

struct RawGraph {
  std::size_t nodes = 0;
  bool have_nodes = false;
  std::vector<std::string> labels;
  std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t>> edges;  // symbol, u, v, line
  bool undirected = false;
};

RawGraph parse_raw(std::string_view text, const std::string& src) {
  RawGraph raw;
  auto lines = detail::tokenize_lines(text);
  if (lines.empty() || lines.front().tokens != std::vector<std::string>{"graph"})
    throw ParseError(src, lines.empty() ? 0 : lines.front().number, "expected 'graph' header");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [num, t] = lines[i];
    if (t[0] == "nodes") {
      if (t.size() != 2) throw ParseError(src, num, "usage: nodes <n>");
      raw.nodes = detail::parse_count(t[1], src, num);
      if (raw.nodes == 0) throw ParseError(src, num, "graphs must have at least one node");
      raw.have_nodes = true;
    } else if (t[0] == "labels") {
      raw.labels.assign(t.begin() + 1, t.end());
    } else if (t[0] == "edge") {
      if (t.size() != 4) throw ParseError(src, num, "usage: edge <symbol> <u> <v>");
      raw.edges.emplace_back(t[1], detail::parse_count(t[2], src, num), detail::parse_count(t[3], src, num), num);
    } else if (t[0] == "undirected") {
      raw.undirected = true;
    } else {
      throw ParseError(src, num, "unknown directive '" + t[0] + "'");
    }
  }
  if (!raw.have_nodes) throw ParseError(src, 0, "missing 'nodes' line");
  if (!raw.labels.empty() && raw.labels.size() != raw.nodes)
    throw ParseError(src, 0, "expected " + std::to_string(raw.nodes) + " labels, got " + std::to_string(raw.labels.size()));
  for (const auto& [sym, u, v, num] : raw.edges)
    if (u >= raw.nodes || v >= raw.nodes) throw ParseError(src, num, "edge endpoint out of range");
  return raw;
}

LabeledGraph build(const RawGraph& raw, const Alphabets& a, const std::string& src) {
  std::vector<Edge> edges;
  for (const auto& [sym, u, v, num] : raw.edges) {
    auto id = a.edges.find(sym);
    if (!id) throw ParseError(src, num, "unknown edge symbol '" + sym + "'");
    edges.push_back({*id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    if (raw.undirected) edges.push_back({*id, static_cast<NodeId>(v), static_cast<NodeId>(u)});
  }
  std::vector<SymbolId> labels(raw.nodes, 0);
  if (raw.labels.empty()) {
    if (!a.nodes.find("blank")) throw ParseError(src, 0, "missing 'labels' line");
    std::fill(labels.begin(), labels.end(), *a.nodes.find("blank"));
  } else {
    for (std::size_t v = 0; v < raw.nodes; ++v) {
      auto id = a.nodes.find(raw.labels[v]);
      if (!id) throw ParseError(src, 0, "unknown node label '" + raw.labels[v] + "'");
      labels[v] = *id;
    }
  }
  return LabeledGraph(Graph(raw.nodes, a.edges.size(), std::move(edges)), std::move(labels));
}

}  // namespace

LabeledGraph parse_graph(std::string_view text, const Alphabets& alphabets, std::string_view source) {
  const std::string src(source);
  return build(parse_raw(text, src), alphabets, src);
}

std::pair<LabeledGraph, Alphabets> parse_graph_infer(std::string_view text, std::string_view source) {
  const std::string src(source);
  RawGraph raw = parse_raw(text, src);
  std::vector<std::string> nodes;
  std::vector<std::string> edges;
  auto add = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (const auto& l : raw.labels) add(nodes, l);
  for (const auto& e : raw.edges) add(edges, std::get<0>(e));
  if (nodes.empty()) nodes.push_back("blank");
  if (edges.empty()) edges.push_back("blank");
  Alphabets a{SymbolSet(nodes), SymbolSet(edges)};
  return {build(raw, a, src), a};
}

std::string format_graph(const LabeledGraph& g, const Alphabets& alphabets) {
  std::ostringstream out;
  out << "graph\nnodes " << g.node_count() << "\nlabels";
  for (SymbolId a : g.labels) out << ' ' << alphabets.nodes.name(a);
  out << '\n';
  for (const auto& e : g.graph.edges())
    out << "edge " << alphabets.edges.name(e.symbol) << ' ' << e.from << ' ' << e.to << '\n';
  return out.str();
}

}  // namespace dga
