#include "dga/builtins.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "dga/builder.hpp"
#include "dga/error.hpp"
#include "text_util.hpp"

namespace dga {

bool Dfa::accepts(const std::vector<SymbolId>& word) const {
  std::size_t s = start;
  for (SymbolId a : word) s = delta.at(s).at(a);
  return accepting[s];
}

Dfa parse_dfa(std::string_view text, std::string_view source) {
  const std::string src(source);
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty() || lines.front().tokens != std::vector<std::string>{"dfa"})
    throw ParseError(src, lines.empty() ? 0 : lines.front().number, "expected 'dfa' header");
  Dfa d;
  std::optional<std::string> start;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> accept_lines, delta_lines;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].tokens;
    const std::vector<std::string> rest(t.begin() + 1, t.end());
    if (t[0] == "alphabet") {
      try {
        d.alphabet = SymbolSet(rest);
      } catch (const DomainError& e) {
        throw ParseError(src, lines[i].number, e.what());
      }
    } else if (t[0] == "states") {
      d.states = rest;
    } else if (t[0] == "start" && rest.size() == 1) {
      start = rest[0];
    } else if (t[0] == "accept") {
      accept_lines.emplace_back(lines[i].number, rest);
    } else if (t[0] == "delta" && rest.size() == 3) {
      delta_lines.emplace_back(lines[i].number, rest);
    } else {
      throw ParseError(src, lines[i].number, "unexpected line starting with '" + t[0] + "'");
    }
  }
  if (d.alphabet.size() == 0 || d.states.empty() || !start) throw ParseError(src, 0, "dfa needs alphabet, states and start");
  auto state = [&](const std::string& s, std::size_t line) {
    auto it = std::find(d.states.begin(), d.states.end(), s);
    if (it == d.states.end()) throw ParseError(src, line, "unknown dfa state '" + s + "'");
    return static_cast<std::size_t>(it - d.states.begin());
  };
  d.start = state(*start, 0);
  d.accepting.assign(d.states.size(), false);
  for (const auto& [line, names] : accept_lines)
    for (const auto& s : names) d.accepting[state(s, line)] = true;
  const std::size_t none = static_cast<std::size_t>(-1);
  d.delta.assign(d.states.size(), std::vector<std::size_t>(d.alphabet.size(), none));
  for (const auto& [line, t] : delta_lines) {
    auto sym = d.alphabet.find(t[1]);
    if (!sym) throw ParseError(src, line, "unknown dfa symbol '" + t[1] + "'");
    d.delta[state(t[0], line)][*sym] = state(t[2], line);
  }
  for (std::size_t s = 0; s < d.states.size(); ++s)
    for (SymbolId a = 0; a < d.alphabet.size(); ++a)
      if (d.delta[s][a] == none)
        throw ParseError(src, 0, "missing transition for state '" + d.states[s] + "' on '" + d.alphabet.name(a) + "'");
  return d;
}

Dfa even_a_dfa() {
  Dfa d;
  d.alphabet = SymbolSet({"a", "b"});
  d.states = {"even", "odd"};
  d.start = 0;
  d.accepting = {true, false};
  d.delta = {{1, 0}, {0, 1}};
  return d;
}

namespace builtins {

namespace {

constexpr int blank = 0;

Adga color_diagram(StateKind guess_kind) {
  SpecBuilder b(Alphabets::blank());
  const StateId ini = b.state("ini", guess_kind);
  const StateId spade = b.state("spade", guess_kind);
  const StateId heart = b.state("heart", guess_kind);
  const StateId club = b.state("club", guess_kind);
  const StateId yes = b.state("yes", StateKind::permanent);
  const StateId no = b.state("no", StateKind::permanent);
  b.init(SymbolId{0}, ini);
  b.rule(ini, Condition::truth(), {spade, heart, club});
  for (StateId c : {spade, heart, club}) {
    b.rule(c, Condition::contains(blank, c), {no});
    b.rule(c, !Condition::contains(blank, c), {yes});
  }
  if (guess_kind == StateKind::existential)
    b.accept_sets({{yes}});
  else
    b.accept_sets({{no}, {yes, no}});
  return b.build();
}

}  // namespace

Adga color3() { return color_diagram(StateKind::existential); }
Adga not_color3() { return color_diagram(StateKind::universal); }

Adga centric() {
  SpecBuilder b({SymbolSet({"a", "b", "c"}), SymbolSet({"blank"})});
  const StateId qa = b.state("q_a", StateKind::existential);
  const StateId qb = b.state("q_b", StateKind::existential);
  const StateId qc = b.state("q_c", StateKind::existential);
  const StateId qa1 = b.state("q_a'", StateKind::universal);
  const StateId qb_club = b.state("q_b_club", StateKind::universal);
  const StateId qb_diamond = b.state("q_b_diamond", StateKind::universal);
  const StateId qa_spade = b.state("q_a_spade", StateKind::permanent);
  const StateId qa_heart = b.state("q_a_heart", StateKind::permanent);
  const StateId yes = b.state("yes", StateKind::permanent);
  const StateId no = b.state("no", StateKind::permanent);
  b.init(SymbolId{0}, qa);
  b.init(SymbolId{1}, qb);
  b.init(SymbolId{2}, qc);
  b.rule(qa, Condition::truth(), {qa1});
  b.rule(qb, Condition::contains(blank, qb), {no});
  b.rule(qb, !Condition::contains(blank, qb), {qb_club, qb_diamond});
  const Condition sees_a_or_c = Condition::meets(blank, StateSet{qa, qc});
  b.rule(qc, sees_a_or_c, {no});
  b.rule(qc, !sees_a_or_c, {yes});
  b.rule(qb_club, Condition::truth(), {yes});
  b.rule(qb_diamond, Condition::truth(), {yes});
  const Condition only_markers_both =
      !Condition::meets(blank, StateSet{qa1}) && Condition::contains(blank, qb_club) &&
      Condition::contains(blank, qb_diamond);
  b.rule(qa1, only_markers_both, {qa_spade, qa_heart});
  b.rule(qa1, !only_markers_both, {no});
  b.accept_sets({{qa_spade, yes}, {qa_heart, yes}});
  return b.build();
}

Adga order_le(std::size_t k) {
  SpecBuilder b(Alphabets::blank());
  const StateId ini = b.state("ini", StateKind::universal);
  std::vector<StateId> marks;
  for (std::size_t i = 1; i <= k + 1; ++i) marks.push_back(b.state("s" + std::to_string(i), StateKind::permanent));
  b.init(SymbolId{0}, ini);
  b.rule(ini, Condition::truth(), marks);
  std::vector<Condition> all;
  for (StateId s : marks) all.push_back(Condition::contains(0, s));
  b.acceptance(!Condition::all_of(all));
  return b.build();
}

Adga order_ge(std::size_t k) {
  if (k == 0) return trivial(true);
  SpecBuilder b(Alphabets::blank());
  const StateId ini = b.state("ini", StateKind::existential);
  std::vector<StateId> marks;
  for (std::size_t i = 1; i <= k; ++i) marks.push_back(b.state("s" + std::to_string(i), StateKind::permanent));
  b.init(SymbolId{0}, ini);
  b.rule(ini, Condition::truth(), marks);
  std::vector<Condition> all;
  for (StateId s : marks) all.push_back(Condition::contains(0, s));
  b.acceptance(Condition::all_of(all));
  return b.build();
}

Adga colored(const SymbolSet& sigma) {
  SpecBuilder b({sigma, SymbolSet({"blank"})});
  std::vector<StateId> own;
  for (SymbolId a = 0; a < sigma.size(); ++a) {
    own.push_back(b.state("l_" + sigma.name(a), StateKind::existential));
    b.init(a, own.back());
  }
  const StateId yes = b.state("yes", StateKind::permanent);
  const StateId no = b.state("no", StateKind::permanent);
  for (StateId q : own) {
    b.rule(q, Condition::contains(blank, q), {no});
    b.rule(q, !Condition::contains(blank, q), {yes});
  }
  b.acceptance(!Condition::contains(0, no));
  return b.build();
}

Adga occur(const SymbolSet& sigma) {
  SpecBuilder b({sigma, SymbolSet({"blank"})});
  std::vector<Condition> all;
  for (SymbolId a = 0; a < sigma.size(); ++a) {
    const StateId p = b.state("p_" + sigma.name(a), StateKind::permanent);
    b.init(a, p);
    all.push_back(Condition::contains(0, p));
  }
  b.acceptance(Condition::all_of(all));
  return b.build();
}

Adga trivial(bool accept) {
  SpecBuilder b(Alphabets::blank());
  const StateId p = b.state("p", StateKind::permanent);
  b.init(SymbolId{0}, p);
  b.acceptance(accept ? Condition::truth() : Condition::falsity());
  return b.build();
}

Adga word_dfa(const Dfa& dfa) {
  const auto& sigma = dfa.alphabet;
  SpecBuilder b({sigma, SymbolSet({"blank"})});
  std::vector<StateId> label_state;
  for (SymbolId a = 0; a < sigma.size(); ++a) {
    label_state.push_back(b.state("l_" + sigma.name(a), StateKind::existential));
    b.init(a, label_state.back());
  }
  // guess[a][p][last]: the node reads a, the run is in p before it, and it claims to be last.
  std::vector<std::vector<std::array<StateId, 2>>> guess(sigma.size());
  StateSet all_guesses;
  for (SymbolId a = 0; a < sigma.size(); ++a)
    for (std::size_t p = 0; p < dfa.states.size(); ++p) {
      std::array<StateId, 2> g{};
      for (int last = 0; last < 2; ++last) {
        g[last] = b.state("g_" + sigma.name(a) + "_" + dfa.states[p] + (last ? "_last" : "_inner"), StateKind::existential);
        all_guesses.insert(g[last]);
      }
      guess[a].push_back(g);
    }
  const StateId fin = b.state("fin", StateKind::permanent);
  const StateId yes = b.state("yes", StateKind::permanent);
  const StateId no = b.state("no", StateKind::permanent);
  for (SymbolId a = 0; a < sigma.size(); ++a) {
    std::vector<StateId> options;
    for (const auto& g : guess[a]) options.insert(options.end(), g.begin(), g.end());
    b.rule(label_state[a], Condition::truth(), options);
  }
  for (SymbolId a = 0; a < sigma.size(); ++a)
    for (std::size_t p = 0; p < dfa.states.size(); ++p) {
      std::vector<Condition> ok;
      if (p == dfa.start) ok.push_back(!Condition::meets(blank, all_guesses));
      for (SymbolId a2 = 0; a2 < sigma.size(); ++a2)
        for (std::size_t p2 = 0; p2 < dfa.states.size(); ++p2) {
          if (dfa.delta[p2][a2] != p) continue;
          const StateId pred = guess[a2][p2][0];
          StateSet others = all_guesses;
          others.erase(pred);
          ok.push_back(Condition::contains(blank, pred) && !Condition::meets(blank, others));
        }
      const Condition checked = Condition::any_of(ok);
      for (int last = 0; last < 2; ++last) {
        const StateId q = guess[a][p][last];
        const StateId outcome = last ? (dfa.accepting[dfa.delta[p][a]] ? fin : no) : yes;
        if (outcome == no) {
          b.rule(q, Condition::truth(), {no});
        } else {
          b.rule(q, checked, {outcome});
          b.rule(q, !checked, {no});
        }
      }
    }
  b.acceptance(Condition::contains(0, fin) && !Condition::contains(0, no));
  return b.build();
}

}  // namespace builtins

namespace {

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_param(std::string_view name, std::string_view param) {
  try {
    std::size_t used = 0;
    const std::string p(param);
    const long long v = std::stoll(p, &used);
    if (used != p.size() || v < 0) throw std::invalid_argument(p);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw DomainError("builtin '" + std::string(name) + "' needs a nonnegative integer parameter");
  }
}

}  // namespace

Adga builtin(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view param = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto need_param = [&] {
    if (param.empty()) throw DomainError("builtin '" + std::string(name) + "' needs a parameter after ':'");
  };
  if (name == "color3") return builtins::color3();
  if (name == "not_color3") return builtins::not_color3();
  if (name == "centric") return builtins::centric();
  if (name == "order_le") {
    need_param();
    return builtins::order_le(parse_param(name, param));
  }
  if (name == "order_ge") {
    need_param();
    return builtins::order_ge(parse_param(name, param));
  }
  if (name == "colored" || name == "occur") {
    need_param();
    const SymbolSet sigma(split_commas(param));
    return name == "colored" ? builtins::colored(sigma) : builtins::occur(sigma);
  }
  if (name == "trivial") {
    if (param != "accept" && param != "reject") throw DomainError("builtin 'trivial' takes accept or reject");
    return builtins::trivial(param == "accept");
  }
  if (name == "word_dfa") {
    if (param.empty()) return builtins::word_dfa(even_a_dfa());
    std::ifstream in{std::string(param)};
    if (!in) throw Error("cannot read dfa file '" + std::string(param) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return builtins::word_dfa(parse_dfa(ss.str(), param));
  }
  throw DomainError("unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"color3", "not_color3", "centric", "order_le:<k>", "order_ge:<k>", "colored:<a,b,...>", "occur:<a,b,...>",
          "trivial:<accept|reject>", "word_dfa[:<dfa file>]"};
}

std::vector<std::pair<std::string, Adga>> registry() {
  const SymbolSet xy({"x", "y"});
  return {
      {"color3", builtins::color3()},
      {"not_color3", builtins::not_color3()},
      {"centric", builtins::centric()},
      {"order_le:1", builtins::order_le(1)},
      {"order_le:2", builtins::order_le(2)},
      {"order_ge:2", builtins::order_ge(2)},
      {"order_ge:3", builtins::order_ge(3)},
      {"colored:x,y", builtins::colored(xy)},
      {"occur:x,y", builtins::occur(xy)},
      {"word_dfa", builtins::word_dfa(even_a_dfa())},
      {"trivial:accept", builtins::trivial(true)},
      {"trivial:reject", builtins::trivial(false)},
  };
}

LabeledGraph centric_example_graph() {
  // a-node 0 is fed by b-nodes 1 and 2 and feeds b-node 3; c-node 4 sits between the b's.
  Graph g(5, 1, {{0, 1, 0}, {0, 2, 0}, {0, 0, 3}, {0, 1, 4}, {0, 4, 2}, {0, 3, 4}});
  return LabeledGraph(std::move(g), {0, 1, 1, 1, 2});
}

LabeledGraph word_graph(const std::vector<SymbolId>& word) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    edges.push_back({0, static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
  return LabeledGraph(Graph(word.size(), 1, std::move(edges)), word);
}

}  // namespace dga
