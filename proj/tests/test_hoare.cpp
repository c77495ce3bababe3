#include <regex>
#include <sstream>

#include "doctest.h"
#include "dga/hoare.hpp"
#include "floodmax_suite.hpp"
#include "oracles.hpp"

using namespace dga;

namespace {

std::vector<VcKind> kinds(const std::vector<Vc>& vcs) {
  std::vector<VcKind> out;
  for (const auto& vc : vcs) out.push_back(vc.kind);
  return out;
}

const char* kNested = R"(program nested
domain 0 1
vars a b
require { all v: v.a == 0 }
while some v: v.a == 0 invariant { true } {
  each v { v.a := 1; }
  assert { all v: v.a == 1 }
  while some v: v.b == 0 invariant { all v: v.a == 1 } {
    each v { v.b := 1; }
  }
}
ensure { all v: v.a == 1 }
)";

}  // namespace

TEST_CASE("condition generation") {
  const DplProgram p = suite::load_program("floodmax.dpl");
  const std::vector<Vc> vcs = vcgen(p);
  CHECK(kinds(vcs) == std::vector<VcKind>{VcKind::entry, VcKind::preservation, VcKind::exit});
  CHECK(vcs[0].rounds.size() == 1);
  CHECK(vcs[1].rounds.size() == 1);
  CHECK(vcs[2].rounds.empty());
  for (const auto& vc : vcs) {
    CHECK(is_syntactically_deterministic(vc.lhs));
    CHECK(is_syntactically_deterministic(vc.rhs));
  }

  const DplProgram straight = parse_dpl(
      "program s\ndomain 0 1\nvars x\nrequire { all v: v.x == 0 }\neach v { v.x := 1; }\neach v { skip; }\n"
      "ensure { all v: v.x == 1 }");
  const std::vector<Vc> one = vcgen(straight);
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == VcKind::entry);
  CHECK(one[0].rounds.size() == 2);

  const std::vector<Vc> nested = vcgen(parse_dpl(kNested));
  CHECK(nested.size() == 2 * 2 + 1 + 1);
  std::size_t weaken = 0;
  for (const auto& vc : nested) weaken += vc.kind == VcKind::weaken ? 1 : 0;
  CHECK(weaken == 1);
  CHECK(check(parse_dpl(kNested), {3, 1, true}).verified());
}

TEST_CASE("required automata track the rounds") {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1");
  const auto corpus = oracle::undirected_corpus(p.space.size(), 3);
  for (const auto& vc : vcgen(p)) {
    CAPTURE(to_string(vc.kind));
    std::size_t mismatches = 0;
    for (const auto& g : corpus) {
      LabeledGraph state = g;
      for (const auto& r : vc.rounds) state = step_round(r, p.space, state);
      mismatches += accepts(vc.rhs, g) != eval_assertion(vc.goal, p.space, state) ? 1 : 0;
      mismatches += accepts(vc.lhs, g) != eval_assertion(vc.assumption, p.space, g) ? 1 : 0;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("checking the FloodMax variants") {
  const CheckOptions opts{3, 2, true};

  const VcReport strong = check(suite::load_program("floodmax_strengthened.dpl"), opts);
  CHECK(strong.verified());
  CHECK_FALSE(strong.exact());

  struct Expectation {
    const char* file;
    VcKind failing;
  };
  for (const Expectation& e : {Expectation{"floodmax.dpl", VcKind::preservation},
                               Expectation{"floodmax_weak_invariant.dpl", VcKind::exit},
                               Expectation{"floodmax_forgetful.dpl", VcKind::preservation}}) {
    CAPTURE(e.file);
    const DplProgram p = suite::load_program(e.file);
    const VcReport r = check(p, opts);
    CHECK_FALSE(r.verified());
    for (std::size_t i = 0; i < r.vcs.size(); ++i) {
      CAPTURE(to_string(r.vcs[i].kind));
      CHECK(r.results[i].holds == (r.vcs[i].kind != e.failing));
      if (r.results[i].holds) continue;
      REQUIRE(r.results[i].violation);
      CHECK(replays(r.vcs[i], p.space, *r.results[i].violation));
    }
  }
}

TEST_CASE("violations persist as the cap grows") {
  const DplProgram p = suite::load_program("floodmax_forgetful.dpl");
  const Vc vc = vcgen(p)[1];
  std::optional<LabeledGraph> first;
  for (std::size_t cap = 1; cap <= 3; ++cap) {
    const VcResult r = discharge(vc, {cap, 1, true});
    REQUIRE_FALSE(r.holds);
    if (!first) first = r.violation;
    CHECK(r.violation->node_count() <= first->node_count());
    CHECK(replays(vc, p.space, *first));
  }
}

TEST_CASE("report format") {
  const DplProgram p = suite::load_program("floodmax.dpl");
  const VcReport r = check(p, {3, 1, true});
  const std::string text = format_report(p, r);
  std::istringstream in(text);
  std::string line;
  std::size_t headers = 0;
  const std::regex header(R"(VC (entry|preservation|exit|weaken) L[0-9]+: (HOLDS exact=(true|false)|VIOLATION))");
  std::string graph_text;
  bool in_graph = false;
  while (std::getline(in, line)) {
    if (line.rfind("VC ", 0) == 0) {
      CHECK(std::regex_match(line, header));
      ++headers;
      in_graph = line.find("VIOLATION") != std::string::npos;
    } else if (in_graph) {
      graph_text += line + "\n";
    }
  }
  CHECK(headers == 3);
  const Alphabets alpha{p.space.symbols(), SymbolSet({"blank"})};
  const LabeledGraph g = parse_graph(graph_text, alpha);
  CHECK(g == *r.results[1].violation);
  CHECK(text.find("m=0,m_old=0,m_ini=0") != std::string::npos);
}
