#include "doctest.h"
#include "dga/builtins.hpp"
#include "dga/constructions.hpp"
#include "dga/error.hpp"
#include "oracles.hpp"

using namespace dga;

namespace {

std::vector<LabeledGraph> graphs_for(const Adga& a, std::size_t n) {
  return enumerate_graphs(a.alphabets().nodes.size(), a.alphabets().edges.size(), n, EnumerationOptions{});
}

Adga blank_color(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
  const SymbolSet sigma(names);
  const Projection h(sigma, SymbolSet({"blank"}), std::vector<SymbolId>(k, 0));
  return project(builtins::colored(sigma), h);
}

}  // namespace

TEST_CASE("complement negates membership on every registry automaton") {
  for (const auto& [name, a] : registry()) {
    CAPTURE(name);
    const Adga c = complement(a);
    CHECK(classify(c) == (classify(a) == AutomatonClass::ddga ? AutomatonClass::ddga : classify(c)));
    for (const auto& g : graphs_for(a, 3)) {
      CAPTURE(format_graph(g, a.alphabets()));
      REQUIRE(accepts(c, g) == !accepts(a, g));
    }
  }
}

TEST_CASE("complement agrees with run enumeration") {
  const Adga c = complement(builtins::centric());
  for (const auto& g : graphs_for(c, 2)) CHECK(accepts(c, g) == oracle::accepts_by_runs(c, g));
}

TEST_CASE("union of node-count languages") {
  const Adga u = union_of(builtins::order_le(1), builtins::order_ge(3));
  for (const auto& g : graphs_for(u, 4)) {
    const std::size_t n = g.graph.node_count();
    CHECK(accepts(u, g) == (n == 1 || n >= 3));
  }
}

TEST_CASE("union matches the pointwise disjunction") {
  const std::vector<std::pair<Adga, Adga>> cases = {
      {builtins::color3(), builtins::order_le(1)},
      {builtins::not_color3(), builtins::order_ge(3)},
      {builtins::colored(SymbolSet({"x", "y"})), builtins::occur(SymbolSet({"x", "y"}))},
      {builtins::trivial(false), builtins::order_le(2)},
  };
  for (const auto& [a1, a2] : cases) {
    const Adga u = union_of(a1, a2);
    for (const auto& g : graphs_for(u, 3)) {
      CAPTURE(format_graph(g, u.alphabets()));
      REQUIRE(accepts(u, g) == (accepts(a1, g) || accepts(a2, g)));
    }
  }
}

TEST_CASE("union of mismatched alphabets is a domain error") {
  CHECK_THROWS_AS(union_of(builtins::color3(), builtins::centric()), DomainError);
}

TEST_CASE("alternating intersection") {
  const Adga i = intersect_adga(builtins::order_le(3), builtins::order_ge(2));
  for (const auto& g : graphs_for(i, 4)) {
    const std::size_t n = g.graph.node_count();
    CHECK(accepts(i, g) == (n == 2 || n == 3));
  }
  const Adga j = intersect_adga(builtins::not_color3(), builtins::order_le(3));
  for (const auto& g : graphs_for(j, 3))
    CHECK(accepts(j, g) == (!oracle::k_colorable(g.graph, 3) && g.graph.node_count() <= 3));
}

TEST_CASE("product of nondeterministic and deterministic automata") {
  const SymbolSet xy({"x", "y"});
  const Adga p = product(builtins::colored(xy), builtins::occur(xy), Combine::conjunction);
  CHECK(classify(p) != AutomatonClass::adga);
  for (const auto& g : graphs_for(p, 3))
    CHECK(accepts(p, g) == (accepts(builtins::colored(xy), g) && accepts(builtins::occur(xy), g)));

  const Adga q = product(builtins::color3(), builtins::order_ge(3), Combine::conjunction);
  for (const auto& g : graphs_for(q, 3))
    CHECK(accepts(q, g) == (oracle::k_colorable(g.graph, 3) && g.graph.node_count() >= 3));

  const Adga d = product(builtins::colored(xy), builtins::occur(xy), Combine::disjunction);
  CHECK(classify(d) == AutomatonClass::ddga);
  for (const auto& g : graphs_for(d, 3))
    CHECK(accepts(d, g) == (accepts(builtins::colored(xy), g) || accepts(builtins::occur(xy), g)));
}

TEST_CASE("product rejects unsupported classes") {
  CHECK_THROWS_AS(product(builtins::order_le(2), builtins::color3(), Combine::conjunction), ClassError);
  CHECK_THROWS_AS(product(builtins::color3(), builtins::color3(), Combine::disjunction), ClassError);
}

TEST_CASE("projection of colorings is colorability") {
  for (std::size_t k : {2u, 3u}) {
    const Adga p = blank_color(k);
    for (const auto& g : graphs_for(p, 4)) CHECK(accepts(p, g) == oracle::k_colorable(g.graph, k));
  }
}

TEST_CASE("projection of occurrence") {
  const SymbolSet abc({"a", "b", "c"});
  const Adga p = project(builtins::occur(abc), Projection(abc, SymbolSet({"blank"}), {0, 0, 0}));
  for (const auto& g : graphs_for(p, 4)) CHECK(accepts(p, g) == (g.graph.node_count() >= 3));

  const Projection partial(SymbolSet({"x", "y"}), SymbolSet({"u", "v"}), {0, 0});
  const Adga q = project(builtins::colored(SymbolSet({"x", "y"})), partial);
  for (const auto& g : graphs_for(q, 3)) {
    bool uses_v = false;
    for (NodeId v = 0; v < g.graph.node_count(); ++v) uses_v = uses_v || g.labels[v] == 1;
    CHECK(accepts(q, g) == (!uses_v && oracle::k_colorable(g.graph, 2)));
  }
}

TEST_CASE("relabel reads through the symbol map") {
  const SymbolSet xy({"x", "y"});
  const SymbolSet uvw({"u", "v", "w"});
  const std::vector<SymbolId> g_map = {0, 1, 1};
  const Adga r = relabel(builtins::occur(xy), uvw, [&](SymbolId b) { return g_map[b]; });
  for (const auto& g : graphs_for(r, 3)) {
    LabeledGraph image = g;
    for (auto& l : image.labels) l = g_map[l];
    CHECK(accepts(r, g) == accepts(builtins::occur(xy), image));
  }
}
