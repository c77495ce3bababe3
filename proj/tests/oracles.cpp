#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using namespace dga;

namespace {

std::vector<StateSet> received(const LabeledGraph& g, const std::vector<StateId>& conf, NodeId v) {
  std::vector<StateSet> out(g.graph.edge_symbols());
  for (const Edge& e : g.graph.edges())
    if (e.to == v) out[e.symbol].insert(conf[e.from]);
  return out;
}

bool legal_step(const Adga& a, StateId from, StateId to, const std::vector<StateSet>& s) {
  if (a.is_permanent(from)) return to == from;
  for (const auto& r : a.rules())
    if (r.source == from && std::find(r.targets.begin(), r.targets.end(), to) != r.targets.end() && r.guard.eval(s))
      return true;
  return false;
}

// All successor configurations, found by testing every element of Q^n.
std::vector<std::vector<StateId>> successors(const Adga& a, const LabeledGraph& g, const std::vector<StateId>& conf) {
  const std::size_t n = conf.size();
  const std::size_t q = a.state_count();
  std::vector<std::vector<StateId>> out;
  std::vector<std::vector<StateSet>> recv;
  for (NodeId v = 0; v < n; ++v) recv.push_back(received(g, conf, v));
  std::vector<StateId> next(n, 0);
  while (true) {
    bool ok = true;
    for (NodeId v = 0; v < n && ok; ++v) ok = legal_step(a, conf[v], next[v], recv[v]);
    if (ok) out.push_back(next);
    std::size_t i = 0;
    while (i < n && ++next[i] == q) next[i++] = 0;
    if (i == n) break;
  }
  return out;
}

bool has_accepting_run(const Adga& a, const LabeledGraph& g, const std::vector<StateId>& conf) {
  bool permanent = true;
  StateKind kind = StateKind::permanent;
  for (StateId s : conf)
    if (!a.is_permanent(s)) {
      permanent = false;
      kind = a.kind(s);
    }
  if (permanent) {
    StateSet occ;
    for (StateId s : conf) occ.insert(s);
    return a.acceptance().eval_occurrence(occ);
  }
  const auto next = successors(a, g, conf);
  if (kind == StateKind::existential)
    return std::any_of(next.begin(), next.end(), [&](const auto& c) { return has_accepting_run(a, g, c); });
  return std::all_of(next.begin(), next.end(), [&](const auto& c) { return has_accepting_run(a, g, c); });
}

bool next_permutation_iso(const LabeledGraph& x, const LabeledGraph& y, std::vector<NodeId>& perm) {
  do {
    bool same = true;
    for (NodeId v = 0; v < x.node_count() && same; ++v) same = x.labels[v] == y.labels[perm[v]];
    if (!same) continue;
    for (const Edge& e : x.graph.edges())
      if (!y.graph.has_edge(e.symbol, perm[e.from], perm[e.to])) {
        same = false;
        break;
      }
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool accepts_by_runs(const Adga& a, const LabeledGraph& g) {
  std::vector<StateId> init;
  for (SymbolId l : g.labels) init.push_back(a.init(l));
  return has_accepting_run(a, g, init);
}

void for_each_raw_graph(std::size_t labels, std::size_t n, bool self_loops,
                        const std::function<void(const LabeledGraph&)>& visit) {
  std::vector<std::pair<NodeId, NodeId>> slots;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v || self_loops) slots.emplace_back(u, v);
  std::size_t label_combos = 1;
  for (std::size_t i = 0; i < n; ++i) label_combos *= labels;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) edges.push_back({0, slots[i].first, slots[i].second});
    Graph g(n, 1, edges);
    for (std::size_t code = 0; code < label_combos; ++code) {
      std::vector<SymbolId> l(n);
      std::size_t c = code;
      for (std::size_t v = 0; v < n; ++v) {
        l[v] = static_cast<SymbolId>(c % labels);
        c /= labels;
      }
      visit(LabeledGraph(g, l));
    }
  }
}

bool isomorphic(const LabeledGraph& x, const LabeledGraph& y) {
  if (x.node_count() != y.node_count() || x.graph.edges().size() != y.graph.edges().size()) return false;
  std::vector<NodeId> perm(x.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  return next_permutation_iso(x, y, perm);
}

std::vector<LabeledGraph> corpus(std::size_t labels, std::size_t n_max) {
  std::vector<LabeledGraph> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t start = out.size();
    for_each_raw_graph(labels, n, true, [&](const LabeledGraph& g) {
      for (std::size_t i = start; i < out.size(); ++i)
        if (isomorphic(g, out[i])) return;
      out.push_back(g);
    });
  }
  return out;
}

std::vector<LabeledGraph> undirected_corpus(std::size_t labels, std::size_t n_max) {
  std::vector<LabeledGraph> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for_each_raw_graph(labels, n, false, [&](const LabeledGraph& g) {
      if (!is_undirected(g.graph) || !is_connected(g.graph)) return;
      out.push_back(g);
    });
  }
  return out;
}

bool k_colorable(const Graph& g, std::size_t k) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> col(n, 0);
  while (true) {
    bool ok = true;
    for (const Edge& e : g.edges()) ok = ok && col[e.from] != col[e.to];
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && ++col[i] == k) col[i++] = 0;
    if (i == n) return false;
  }
}

}  // namespace oracle
