#include <algorithm>
#include <random>

#include "doctest.h"
#include "dga/dpl.hpp"
#include "dga/error.hpp"
#include "floodmax_suite.hpp"
#include "oracles.hpp"

using namespace dga;

namespace {

LabeledGraph path_graph(const ValuationSpace& s, const std::vector<Valuation>& vals) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < vals.size(); ++i) {
    e.push_back({0, i, i + 1});
    e.push_back({0, i + 1, i});
  }
  std::vector<SymbolId> labels;
  for (const auto& v : vals) labels.push_back(s.encode(v));
  return LabeledGraph(Graph(vals.size(), 1, e), labels);
}

std::vector<int> column(const ValuationSpace& s, const LabeledGraph& g, std::size_t var) {
  std::vector<int> out;
  for (SymbolId l : g.labels) out.push_back(s.decode(l)[var]);
  return out;
}

const GlobalItem& init_round(const DplProgram& p) { return p.items.at(0); }
const GlobalItem& loop_round(const DplProgram& p) { return p.items.at(1).body.at(0); }

const char* kHeaderless = R"(program bad
domain 0 1
vars m
require { true }
each v { v.m := max(M); }
ensure { true })";

}  // namespace

TEST_CASE("parsing the FloodMax program") {
  const DplProgram p = suite::load_program("floodmax.dpl");
  CHECK(p.name == "floodmax");
  CHECK(p.space.domain().values() == std::vector<int>{0, 1, 2});
  CHECK(p.space.vars() == std::vector<std::string>{"m", "m_old", "m_ini"});
  REQUIRE(p.items.size() == 2);
  CHECK(p.items[0].kind == GlobalItem::Kind::round);
  CHECK_FALSE(p.items[0].block.send);
  CHECK(p.items[1].kind == GlobalItem::Kind::loop);
  REQUIRE(p.items[1].body.size() == 1);
  const LocalBlock& body = loop_round(p).block;
  CHECK(body.send == std::size_t{0});
  CHECK(body.messages == "M");
  REQUIRE(body.commands.size() == 2);
  const Expr& update = body.commands[1].value;
  CHECK(update.op == Expr::Op::max);
  CHECK(update.messages);
  REQUIRE(update.args.size() == 1);
  CHECK(update.args[0].op == Expr::Op::variable);

  const std::string text = format_dpl(p);
  CHECK(format_dpl(parse_dpl(text)) == text);
  for (const char* other : {"floodmax_weak_invariant.dpl", "floodmax_forgetful.dpl", "floodmax_strengthened.dpl"}) {
    const DplProgram q = suite::load_program(other);
    CHECK(format_dpl(parse_dpl(format_dpl(q))) == format_dpl(q));
  }
}

TEST_CASE("program errors") {
  CHECK_THROWS_AS(parse_dpl(kHeaderless), ParseError);
  std::string undeclared = kHeaderless;
  undeclared.replace(undeclared.find("max(M)"), 6, "v.q");
  CHECK_THROWS_AS(parse_dpl(undeclared), ParseError);
  std::string outside = kHeaderless;
  outside.replace(outside.find("max(M)"), 6, "5");
  CHECK_THROWS_AS(parse_dpl(outside), ParseError);
  CHECK_THROWS_AS(parse_dpl("program p\ndomain 1 2\nvars m\nrequire { true }\nensure { true }"), ParseError);
  CHECK_THROWS_AS(parse_dpl("program p\ndomain 0\nvars m\nrequire { true }\nwhile true { }\nensure { true }"),
                  ParseError);
  CHECK_THROWS_AS(parse_dpl("program p\ndomain 0\nvars m\nrequire { true }\neach v { skip; send v.m receive M; }\n"
                            "ensure { true }"),
                  ParseError);
  try {
    parse_dpl(std::string(kHeaderless), "bad.dpl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("single rounds") {
  const DplProgram p = suite::load_program("floodmax.dpl");
  const LabeledGraph g = path_graph(p.space, {{1, 2, 1}, {0, 1, 0}, {2, 0, 2}});
  const LabeledGraph after = step_round(loop_round(p).block, p.space, g);
  CHECK(column(p.space, after, 0) == std::vector<int>{1, 2, 2});
  CHECK(column(p.space, after, 1) == std::vector<int>{1, 0, 2});
  CHECK(column(p.space, after, 2) == std::vector<int>{1, 0, 2});
  CHECK(step_round(loop_round(p).block, p.space, g) == after);

  const LabeledGraph init = step_round(init_round(p).block, p.space, g);
  CHECK(column(p.space, init, 1) == std::vector<int>{0, 0, 0});
  CHECK(column(p.space, init, 0) == column(p.space, g, 0));

  LocalBlock skip;
  skip.commands.push_back(LocalCommand{});
  CHECK(step_round(skip, p.space, g) == g);
}

TEST_CASE("rounds see neighbor values only as a set") {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1");
  const LocalBlock& body = loop_round(p).block;
  for (const auto& g : oracle::undirected_corpus(p.space.size(), 3)) {
    const LabeledGraph base = step_round(body, p.space, g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const LabeledGraph twin = step_round(body, p.space, g.with_duplicate(v));
      for (NodeId u = 0; u < g.node_count(); ++u) CHECK(twin.labels[u] == base.labels[u]);
      CHECK(twin.labels.back() == base.labels[v]);
    }
  }
}

TEST_CASE("running FloodMax") {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1 2 3 4 5 6 7");
  std::mt19937 rng(20261019);
  std::uniform_int_distribution<int> value(0, 7);
  std::size_t runs = 0;
  EnumerationOptions opts;
  opts.mode = EnumerationMode::connected_undirected;
  opts.self_loops = false;
  for (std::size_t n = 1; n <= 5; ++n) {
    for_each_structure(n, 1, opts, [&](const Graph& shape) {
      for (int sample = 0; sample < 5; ++sample) {
        std::vector<SymbolId> labels;
        int top = 0;
        for (std::size_t v = 0; v < n; ++v) {
          const int m = value(rng);
          top = std::max(top, m);
          labels.push_back(p.space.encode({m, value(rng), m}));
        }
        const RunOutcome r = run_program(p, LabeledGraph(shape, labels), 20);
        CHECK(r.completed);
        CHECK(column(p.space, r.state, 0) == std::vector<int>(n, top));
        ++runs;
      }
      return true;
    });
  }
  CHECK(runs == 5 * (1 + 1 + 2 + 6 + 21));

  const RunOutcome single = run_program(p, LabeledGraph(Graph(1, 1, {}), {p.space.encode({5, 3, 5})}), 20);
  CHECK(single.completed);
  CHECK(single.iterations == 1);
  CHECK(single.rounds == 2);

  const RunOutcome starved = run_program(p, path_graph(p.space, {{7, 0, 7}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}}), 2);
  CHECK_FALSE(starved.completed);
  CHECK(starved.iterations == 2);

  DplProgram never = p;
  never.items[1].assertion = parse_assertion("some v: v.m != v.m", p.space);
  const RunOutcome skipped = run_program(never, path_graph(p.space, {{7, 0, 7}, {0, 0, 0}}), 0);
  CHECK(skipped.completed);
  CHECK(skipped.iterations == 0);
  CHECK(skipped.rounds == 1);
}

TEST_CASE("weakest preconditions of rounds") {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1");
  const auto corpus = oracle::undirected_corpus(p.space.size(), 3);
  for (const GlobalItem* round : {&init_round(p), &loop_round(p)}) {
    for (const auto& [name, text] : suite::floodmax_assertions()) {
      CAPTURE(name);
      const Adga a = compile_assertion(parse_assertion(text, p.space), p.space);
      const Adga w = wp_round(round->block, p.space, a);
      CHECK(is_syntactically_deterministic(w));
      std::size_t mismatches = 0;
      for (const auto& g : corpus) mismatches += accepts(w, g) != accepts(a, step_round(round->block, p.space, g)) ? 1 : 0;
      CHECK(mismatches == 0);
    }
  }

  LocalBlock skip;
  const Adga theta = compile_assertion(parse_assertion(suite::floodmax_assertions()[1].text, p.space), p.space);
  const Adga same = wp_round(skip, p.space, theta);
  for (const auto& g : corpus) CHECK(accepts(same, g) == accepts(theta, g));
  const Adga everything = wp_round(loop_round(p).block, p.space, compile_assertion(Assertion::constant(true), p.space));
  for (const auto& g : corpus) CHECK(accepts(everything, g));

  const ValuationSpace other(Domain({0, 1}), {"m"});
  CHECK_THROWS_AS(wp_round(skip, p.space, compile_assertion(Assertion::constant(true), other)), DomainError);
}
