#include <chrono>

#include "doctest.h"
#include "dga/builtins.hpp"
#include "dga/constructions.hpp"
#include "dga/error.hpp"
#include "dga/mso.hpp"
#include "mso_suite.hpp"
#include "oracles.hpp"

using namespace dga;

namespace {

const Alphabets kBlank{SymbolSet({"blank"}), SymbolSet({"blank"})};

std::vector<LabeledGraph> graphs(const Alphabets& a, std::size_t n) {
  return enumerate_graphs(a.nodes.size(), a.edges.size(), n, EnumerationOptions{});
}

LabeledGraph undirected(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> e;
  for (auto [u, v] : pairs) {
    e.push_back({0, u, v});
    e.push_back({0, v, u});
  }
  return LabeledGraph(Graph(n, 1, e), std::vector<SymbolId>(n, 0));
}

}  // namespace

TEST_CASE("parsing formulas") {
  const Alphabets ab{SymbolSet({"a", "b"}), SymbolSet({"blank"})};
  const MsoFormula f = parse_mso("EX X . ALL u . (u in X)", ab);
  CHECK(f.op() == MsoFormula::Op::exists);
  CHECK(f.node().vars[0] == "X");
  CHECK(f.node().children[0].op() == MsoFormula::Op::forall);
  CHECK(f.is_sentence());
  CHECK(f.quantifier_depth() == 2);

  const MsoFormula c3 = parse_mso(suite::color3_sentence(), kBlank);
  int set_quantifiers = 0;
  for (MsoFormula g = c3; g.op() == MsoFormula::Op::exists; g = g.node().children[0])
    set_quantifiers += is_set_variable(g.node().vars[0]) ? 1 : 0;
  CHECK(set_quantifiers == 3);

  CHECK_THROWS_AS(parse_mso("lab[c](x)", ab), ParseError);
  CHECK_THROWS_AS(parse_mso("edge[red](x,y)", ab), ParseError);
  CHECK_THROWS_AS(parse_mso("X in x", ab), ParseError);
  CHECK_THROWS_AS(parse_mso("EX x . (lab[a](x)", ab), ParseError);
  try {
    parse_mso("EX x .\n  lab[a](x) & & lab[b](x)", ab, "f.mso");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
}

TEST_CASE("free variables and desugaring") {
  const Alphabets ab{SymbolSet({"a", "b"}), SymbolSet({"blank"})};
  const MsoFormula f = parse_mso("(x in X -> EX y . edge[blank](x,y)) <-> ALL Z . y in Z", ab);
  CHECK(f.free_variables() == std::set<std::string>{"X", "x", "y"});
  CHECK(f.desugared().free_variables() == f.free_variables());
  for (const auto& text : suite::mso_sentences()) {
    const MsoFormula s = parse_mso(text, ab);
    CHECK(s.is_sentence());
    CHECK(s.desugared().is_sentence());
    for (const auto& g : graphs(ab, 2)) CHECK(eval_mso(s, g) == eval_mso(s.desugared(), g));
  }
}

TEST_CASE("printing round-trips") {
  const Alphabets ab = suite::mso_alphabets();
  std::vector<std::string> texts = suite::mso_sentences();
  texts.push_back("(a_ = b_ -> x = y) -> z = z");
  texts.push_back("x = y <-> (y = z <-> z = x)");
  texts.push_back("!(EX x . x = x) | true & !false");
  for (const auto& t : texts) {
    CAPTURE(t);
    const MsoFormula f = parse_mso(t, ab);
    CHECK(parse_mso(to_text(f, ab), ab) == f);
    const auto [g, alpha] = parse_mso_file(format_mso_file(f, ab));
    CHECK(g == f);
    CHECK(alpha == ab);
  }
  CHECK(parse_mso_file("mso\nnode_alphabet blank\nformula\n  ALL x .\n  x = x\n").first.is_sentence());
}

TEST_CASE("model checking") {
  const MsoFormula c3 = parse_mso(suite::color3_sentence(), kBlank);
  const LabeledGraph triangle = undirected(3, {{0, 1}, {1, 2}, {0, 2}});
  const LabeledGraph k4 = undirected(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(eval_mso(c3, triangle) == oracle::k_colorable(triangle.graph, 3));
  CHECK(eval_mso(c3, k4) == oracle::k_colorable(k4.graph, 3));
  CHECK(eval_mso(c3, triangle));
  CHECK_FALSE(eval_mso(c3, k4));
  for (const auto& g : graphs(kBlank, 3)) CHECK(eval_mso(c3, g) == oracle::k_colorable(g.graph, 3));

  const Alphabets a_only{SymbolSet({"a"}), SymbolSet({"blank"})};
  CHECK(eval_mso(parse_mso("ALL u . lab[a](u)", a_only), LabeledGraph()));

  const Alphabets ab = suite::mso_alphabets();
  const MsoFormula open = parse_mso("x in X & edge[blank](x,y)", ab);
  const LabeledGraph g(Graph(2, 1, {{0, 0, 1}}), {0, 1});
  CHECK(eval_mso(open, g, {{{"x", 0}, {"y", 1}}, {{"X", {0}}}}));
  CHECK_FALSE(eval_mso(open, g, {{{"x", 1}, {"y", 0}}, {{"X", {1}}}}));
  CHECK_THROWS_AS(eval_mso(open, g, {{{"x", 0}}, {{"X", {0}}}}), DomainError);
  CHECK_THROWS_AS(eval_mso(open, g, {{{"x", 0}, {"y", 1}, {"z", 1}}, {{"X", {0}}}}), DomainError);
  CHECK_THROWS_AS(eval_mso(open, g, {{{"x", 0}, {"y", 5}}, {{"X", {0}}}}), DomainError);
}

TEST_CASE("exactly_one") {
  const AnnotatedAlphabet sigma(SymbolSet({"blank"}), {"x"});
  const Adga one = exactly_one(sigma, "x");
  CHECK(classify(one) == AutomatonClass::adga);
  const Graph g(3, 1, {{0, 0, 1}});
  CHECK(accepts(one, LabeledGraph(g, {1, 0, 0})));
  CHECK_FALSE(accepts(one, LabeledGraph(g, {1, 1, 0})));
  CHECK_FALSE(accepts(one, LabeledGraph(g, {1, 1, 1})));
  CHECK_FALSE(accepts(one, LabeledGraph(g, {0, 0, 0})));
}

TEST_CASE("atom automata on annotated graphs") {
  const Alphabets ab = suite::mso_alphabets();
  const MsoFormula lab = parse_mso("lab[a](x)", ab);
  const Adga a = compile_mso(lab, ab);
  CHECK(a.length() == 0);
  const AnnotatedAlphabet sigma(ab.nodes, {"x"});
  CHECK(a.alphabets().nodes == sigma.symbols());
  for (const auto& g : graphs(ab, 2))
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const Assignment alpha{{{"x", v}}, {}};
      CHECK(accepts(a, annotate(g, sigma, alpha)) == eval_mso(lab, g, alpha));
    }

  const Adga e = compile_mso(parse_mso("edge[blank](x,y)", ab), ab);
  CHECK(e.length() == 1);
  CHECK(classify(e) == AutomatonClass::ddga);
}

TEST_CASE("compiled sentences agree with the model checker") {
  const Alphabets ab = suite::mso_alphabets();
  for (const auto& text : suite::mso_sentences()) {
    CAPTURE(text);
    const MsoFormula f = parse_mso(text, ab);
    CHECK(f.quantifier_depth() <= 3);
    const Adga a = compile_mso(f, ab);
    CHECK(a.alphabets() == ab);
    for (const auto& g : graphs(ab, 3)) {
      CAPTURE(format_graph(g, ab));
      REQUIRE(accepts(a, g) == eval_mso(f, g));
    }
  }
  const MsoFormula edge = parse_mso("EX x . EX y . edge[blank](x,y)", kBlank);
  const Adga e = compile_mso(edge, kBlank);
  for (const auto& g : graphs(kBlank, 3)) CHECK(accepts(e, g) == !g.graph.edges().empty());
}

TEST_CASE("compiled colorability sentence") {
  const MsoFormula f = parse_mso(suite::color3_sentence(), kBlank);
  const Adga a = compile_mso(f, kBlank);
  for (const auto& g : graphs(kBlank, 2)) CHECK(accepts(a, g) == accepts(builtins::color3(), g));
  for (const auto& g : graphs(kBlank, 3)) CHECK(accepts(a, g) == eval_mso(f, g));
}

TEST_CASE("open formulas over annotated graphs") {
  const Alphabets ab = suite::mso_alphabets();
  const std::vector<std::string> open = {
      "EX y . edge[blank](x,y) & lab[b](y)",
      "ALL y . (edge[blank](y,x) -> lab[a](y))",
      "lab[a](x) | EX X . (x in X & ALL y . (y in X -> lab[a](y)))",
  };
  for (const auto& text : open) {
    CAPTURE(text);
    const MsoFormula f = parse_mso(text, ab);
    REQUIRE(f.free_variables() == std::set<std::string>{"x"});
    const Adga a = compile_mso(f, ab);
    const AnnotatedAlphabet sigma(ab.nodes, {"x"});
    for (const auto& g : graphs(ab, 3))
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const Assignment alpha{{{"x", v}}, {}};
        REQUIRE(accepts(a, annotate(g, sigma, alpha)) == eval_mso(f, g, alpha));
      }
  }
}

TEST_CASE("negation compiles to the complement language") {
  const Alphabets ab = suite::mso_alphabets();
  for (const auto& text : suite::mso_sentences()) {
    const MsoFormula f = parse_mso(text, ab);
    const Adga neg = compile_mso(!f, ab);
    const Adga comp = complement(compile_mso(f, ab));
    for (const auto& g : graphs(ab, 2)) CHECK(accepts(neg, g) == accepts(comp, g));
  }
}

TEST_CASE("encoding automata as sentences") {
  SUBCASE("trivial") {
    const MsoFormula f = mso_of_adga(builtins::trivial(true));
    CHECK(f.is_sentence());
    for (const auto& g : graphs(kBlank, 3)) CHECK(eval_mso(f, g));
  }
  SUBCASE("order_le 1") {
    const MsoFormula f = mso_of_adga(builtins::order_le(1));
    for (const auto& g : graphs(kBlank, 3)) CHECK(eval_mso(f, g) == (g.node_count() <= 1));
  }
  SUBCASE("color3") {
    const MsoFormula f = mso_of_adga(builtins::color3());
    for (const auto& g : graphs(kBlank, 3)) CHECK(eval_mso(f, g) == accepts(builtins::color3(), g));
  }
  SUBCASE("registry") {
    for (const auto& [name, a] : registry()) {
      CAPTURE(name);
      const MsoFormula f = mso_of_adga(a);
      CHECK(f.is_sentence());
      const std::size_t n = name == "word_dfa" ? 2 : 3;
      for (const auto& g : graphs(a.alphabets(), n)) {
        CAPTURE(format_graph(g, a.alphabets()));
        REQUIRE(eval_mso(f, g) == accepts(a, g));
      }
    }
  }
}
