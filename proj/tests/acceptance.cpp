// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "dga/builder.hpp"
#include "dga/builtins.hpp"
#include "dga/constructions.hpp"
#include "dga/decision.hpp"
#include "dga/hoare.hpp"
#include "dga/mso.hpp"
#include "floodmax_suite.hpp"
#include "mso_suite.hpp"
#include "oracles.hpp"

using namespace dga;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::vector<LabeledGraph> graphs_for(const Adga& a, std::size_t n) {
  return enumerate_graphs(a.alphabets().nodes.size(), a.alphabets().edges.size(), n, EnumerationOptions{});
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void color3_fidelity(Outcome& o) {
  const Adga a = builtins::color3();
  std::size_t checked = 0;
  std::size_t wrong = 0;
  auto visit = [&](const LabeledGraph& g) {
    ++checked;
    wrong += accepts(a, g) != oracle::k_colorable(g.graph, 3) ? 1 : 0;
  };
  std::size_t raw3 = 0;
  oracle::for_each_raw_graph(1, 3, true, [&](const LabeledGraph& g) {
    ++raw3;
    visit(g);
  });
  for (std::size_t n : {1, 2, 4})
    for_each_labeled_graph_of_order(1, 1, n, EnumerationOptions{}, [&](const LabeledGraph& g) {
      visit(g);
      return true;
    });
  o.require(raw3 == 512, "512 raw graphs at n=3");
  o.require(wrong == 0, std::to_string(wrong) + " disagreements");
  o.detail << checked << " graphs, " << wrong << " disagreements";
}

void complement_law(Outcome& o) {
  std::size_t checked = 0;
  std::size_t wrong = 0;
  for (const auto& [name, a] : registry()) {
    const Adga c = complement(a);
    for (const auto& g : graphs_for(a, 3)) {
      ++checked;
      if (accepts(c, g) == accepts(a, g)) {
        ++wrong;
        o.require(false, name);
      }
    }
  }
  o.detail << registry().size() << " automata, " << checked << " pairs, " << wrong << " disagreements";
}

void centric_replay(Outcome& o) {
  const Adga a = builtins::centric();
  const LabeledGraph g = centric_example_graph();
  o.require(accepts(a, g), "acceptance");
  const auto run = witness_run(a, g);
  o.require(run.has_value(), "witness run");
  if (!run) return;
  const auto& succ = run->successors;
  o.require(succ[run->root].size() == 1, "single existential choice in round 1");
  const std::size_t second = succ[run->root].empty() ? run->root : succ[run->root][0];
  o.require(succ[second].size() == 2, "two-way universal split in round 2");
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < run->size(); ++i)
    if (succ[i].empty()) {
      ++leaves;
      o.require(is_permanent_configuration(a, run->nodes[i]), "leaf is permanent");
    }
  o.require(leaves == 2, "two permanent leaves");
  o.detail << "run with " << run->size() << " configurations, " << leaves << " permanent leaves, "
           << global_successors(a, g.graph, run->nodes[run->root]).size() << " first-round choices";
}

void mso_compile(Outcome& o) {
  const Alphabets ab = suite::mso_alphabets();
  std::size_t checked = 0;
  std::size_t sentences = 0;
  std::size_t shallow = 0;
  auto compare = [&](const std::string& text, const Alphabets& alpha, std::size_t n) {
    const MsoFormula f = parse_mso(text, alpha);
    const Adga a = compile_mso(f, alpha);
    ++sentences;
    shallow += f.quantifier_depth() <= 3 ? 1 : 0;
    for (const auto& g : enumerate_graphs(alpha.nodes.size(), alpha.edges.size(), n, EnumerationOptions{})) {
      ++checked;
      if (accepts(a, g) != eval_mso(f, g)) o.require(false, text);
    }
  };
  for (const auto& s : suite::mso_sentences()) compare(s, ab, 3);
  compare(suite::color3_sentence(), Alphabets::blank(), 2);
  o.require(shallow == suite::mso_sentences().size() && shallow >= 10, "ten sentences of depth at most 3");
  o.detail << shallow << " sentences of depth <= 3 plus color3, " << checked << " comparisons";
}

void mso_encode(Outcome& o) {
  std::size_t checked = 0;
  const std::vector<std::pair<std::string, Adga>> cases = {
      {"color3", builtins::color3()},
      {"order_le:1", builtins::order_le(1)},
      {"trivial:accept", builtins::trivial(true)},
      {"trivial:reject", builtins::trivial(false)}};
  for (const auto& [name, a] : cases) {
    const MsoFormula f = mso_of_adga(a);
    for (const auto& g : graphs_for(a, 3)) {
      ++checked;
      if (eval_mso(f, g) != accepts(a, g)) o.require(false, name);
    }
  }
  o.detail << cases.size() << " automata, " << checked << " comparisons";
}

void separation(Outcome& o) {
  const Adga le2 = builtins::order_le(2);
  std::size_t corpus = 0;
  for (const auto& g : graphs_for(le2, 4)) {
    ++corpus;
    if (accepts(le2, g) != (g.node_count() <= 2)) o.require(false, "order_le:2 on " + std::to_string(g.node_count()));
  }
  std::size_t dup_checks = 0;
  for (const auto& [name, a] : registry()) {
    const AutomatonClass cls = classify(a);
    if (cls == AutomatonClass::adga) continue;
    for (const auto& g : graphs_for(a, 3)) {
      const bool before = accepts(a, g);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const bool after = accepts(a, g.with_duplicate(v));
        ++dup_checks;
        if (before && !after) o.require(false, name + " monotonicity");
        if (cls == AutomatonClass::ddga && before != after) o.require(false, name + " invariance");
      }
    }
  }
  o.detail << corpus << " graphs for order_le:2, " << dup_checks << " duplication checks";
}

/// Chain of `length` existential states into `permanents` permanent states.
Adga chain(int length, int permanents, std::size_t gammas) {
  std::vector<std::string> edges;
  for (std::size_t i = 0; i < gammas; ++i) edges.push_back("e" + std::to_string(i));
  SpecBuilder b({SymbolSet({"blank"}), SymbolSet(edges)});
  std::vector<StateId> perm;
  for (int i = 0; i < permanents; ++i) perm.push_back(b.state("p" + std::to_string(i), StateKind::permanent));
  StateId prev = perm.front();
  for (int i = length - 1; i >= 0; --i) {
    const StateId q = b.state("s" + std::to_string(i), StateKind::existential);
    b.rule(q, Condition::truth(), {prev});
    prev = q;
  }
  b.init(SymbolId{0}, prev);
  b.acceptance(Condition::falsity());
  return b.build();
}

void emptiness(Outcome& o) {
  using M = EnumerationMode;
  struct Instance {
    const char* name;
    Adga a;
    M mode;
    long long hand;  // computed by hand from the state count, length and edge alphabet
  };
  const std::vector<Instance> cases = {
      {"4 states, length 2", chain(2, 2, 1), M::all_directed, 64},           // 4^3
      {"1 state, length 0", chain(0, 1, 1), M::all_directed, 1},             // 1^1
      {"2 states, length 1, undirected", chain(1, 1, 1), M::connected_undirected, 64},   // (2*2^2)^2
      {"3 states, 2 edge symbols", chain(1, 2, 2), M::connected_undirected, 36864},    // (3*2^6)^2
      {"color3", builtins::color3(), M::all_directed, 216},                  // 6^3
      {"color3, undirected", builtins::color3(), M::connected_undirected, 56623104},  // (6*2^6)^3
  };
  for (const auto& c : cases) {
    const EmptinessBound b = emptiness_bound(c.a, c.mode);
    o.require(b.value && *b.value == BigInt(c.hand), c.name);
  }
  SearchOptions opts;
  opts.n_cap = 5;
  const SearchOutcome ge3 = find_member(builtins::order_ge(3), opts);
  o.require(ge3.found() && ge3.counterexample->node_count() == 3, "order_ge:3 member with 3 nodes");
  const SearchOutcome none = find_member(chain(0, 1, 1), opts);
  o.require(!none.found() && none.exact && none.n_checked == 1, "exact emptiness up to 1 node");
  o.detail << cases.size() << " bounds; order_ge:3 member has "
           << (ge3.found() ? ge3.counterexample->node_count() : 0) << " nodes; empty automaton exact up to "
           << none.n_checked;
}

void regularity(Outcome& o) {
  const Dfa d = even_a_dfa();
  const Adga a = builtins::word_dfa(d);
  std::size_t words = 0;
  for (std::size_t len = 1; len <= 6; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::vector<SymbolId> w;
      std::size_t as = 0;
      for (std::size_t i = 0; i < len; ++i) {
        w.push_back((bits >> i) & 1);
        as += ((bits >> i) & 1) == 0 ? 1 : 0;
      }
      ++words;
      if (accepts(a, word_graph(w)) != (as % 2 == 0)) o.require(false, "word of length " + std::to_string(len));
    }
  o.require(words == 126, "126 words");
  o.require(a.length() == 2, "length 2");
  o.detail << words << " words";
}

void wp_identity(Outcome& o) {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1");
  const auto corpus = oracle::undirected_corpus(p.space.size(), 3);
  const std::vector<const LocalBlock*> rounds = {&p.items.at(0).block, &p.items.at(1).body.at(0).block};
  std::size_t checked = 0;
  for (const LocalBlock* k : rounds)
    for (const auto& [name, text] : suite::floodmax_assertions()) {
      const Adga a = compile_assertion(parse_assertion(text, p.space), p.space);
      const Adga w = wp_round(*k, p.space, a);
      o.require(is_syntactically_deterministic(w), std::string("deterministic wp for ") + name);
      for (const auto& g : corpus) {
        ++checked;
        if (accepts(w, g) != accepts(a, step_round(*k, p.space, g))) o.require(false, name);
      }
    }
  o.detail << rounds.size() << " rounds x " << suite::floodmax_assertions().size() << " assertions x "
           << corpus.size() << " graphs = " << checked << " checks";
}

std::string summary(const VcReport& r) {
  std::ostringstream s;
  for (std::size_t i = 0; i < r.vcs.size(); ++i) {
    s << (i ? ", " : "") << to_string(r.vcs[i].kind) << ' ';
    if (r.results[i].holds)
      s << "holds";
    else
      s << "VIOLATION(" << r.results[i].violation->node_count() << " nodes)";
  }
  return s.str();
}

void floodmax_proof(Outcome& o) {
  CheckOptions opts;
  opts.n_cap = 4;
  opts.jobs = workers();

  const DplProgram main = suite::load_program("floodmax.dpl");
  const VcReport r = check(main, opts);
  o.require(r.vcs.size() == 3, "three conditions");
  o.require(r.verified(), "all conditions of floodmax.dpl hold");
  o.detail << "floodmax.dpl: " << summary(r);
  for (std::size_t i = 0; i < r.vcs.size(); ++i)
    if (r.results[i].violation)
      o.detail << " (" << to_string(r.vcs[i].kind) << " counterexample replays: "
               << (replays(r.vcs[i], main.space, *r.results[i].violation) ? "yes" : "no") << ")";

  for (const char* mutant : {"floodmax_weak_invariant.dpl", "floodmax_forgetful.dpl"}) {
    const DplProgram p = suite::load_program(mutant);
    const VcReport m = check(p, opts);
    bool violated = false;
    for (std::size_t i = 0; i < m.vcs.size(); ++i) {
      if (m.results[i].holds) continue;
      violated = true;
      o.require(replays(m.vcs[i], p.space, *m.results[i].violation), std::string(mutant) + " replay");
    }
    o.require(violated, std::string(mutant) + " violation");
    o.detail << "; " << mutant << ": " << summary(m);
  }

  const VcReport strong = check(suite::load_program("floodmax_strengthened.dpl"), opts);
  o.detail << "; supplementary floodmax_strengthened.dpl: " << summary(strong);
}

void floodmax_simulation(Outcome& o) {
  const DplProgram p = suite::load_program("floodmax.dpl", "0 1 2 3 4 5 6 7");
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> value(0, 7);
  EnumerationOptions opts;
  opts.mode = EnumerationMode::connected_undirected;
  opts.self_loops = false;
  std::size_t shapes = 0;
  std::size_t runs = 0;
  std::size_t max_iterations = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_structure(n, 1, opts, [&](const Graph& shape) {
      ++shapes;
      for (int sample = 0; sample < 100; ++sample) {
        std::vector<SymbolId> labels;
        int top = 0;
        for (std::size_t v = 0; v < n; ++v) {
          const int m = value(rng);
          top = std::max(top, m);
          labels.push_back(p.space.encode({m, value(rng), m}));
        }
        const RunOutcome r = run_program(p, LabeledGraph(shape, labels), 20);
        ++runs;
        max_iterations = std::max(max_iterations, r.iterations);
        bool ok = r.completed;
        for (SymbolId l : r.state.labels) ok = ok && p.space.decode(l)[0] == top;
        if (!ok) o.require(false, "run " + std::to_string(runs));
      }
      return true;
    });
  o.detail << shapes << " graphs x 100 labelings, at most " << max_iterations << " loop iterations";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"3-colorability automaton matches the colorability oracle", color3_fidelity},
      {"complement inverts acceptance", complement_law},
      {"centric example run", centric_replay},
      {"compiled sentences agree with model checking", mso_compile},
      {"sentences encoding automata agree with acceptance", mso_encode},
      {"separation witnesses and duplication", separation},
      {"emptiness bounds and minimal members", emptiness},
      {"even-a word automaton", regularity},
      {"weakest precondition identity", wp_identity},
      {"FloodMax annotations and mutants", floodmax_proof},
      {"FloodMax simulation", floodmax_simulation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail.str() << " (" << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
