#include "dga/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "dga/error.hpp"

namespace dga {

char kind_letter(StateKind k) {
  switch (k) {
    case StateKind::existential:
      return 'E';
    case StateKind::universal:
      return 'A';
    case StateKind::permanent:
      return 'P';
  }
  return '?';
}

namespace {

std::string kind_word(StateKind k) {
  switch (k) {
    case StateKind::existential:
      return "existential";
    case StateKind::universal:
      return "universal";
    case StateKind::permanent:
      return "permanent";
  }
  return "?";
}

bool valid_state_name(const std::string& name) {
  if (name.empty()) return false;
  for (char ch : name) {
    if (std::isspace(static_cast<unsigned char>(ch)) != 0) return false;
    if (ch == '(' || ch == ')' || ch == '{' || ch == '}' || ch == '#') return false;
  }
  return true;
}

}  // namespace

std::optional<StateId> Adga::find_state(std::string_view name) const {
  for (StateId q = 0; q < spec_.states.size(); ++q)
    if (spec_.states[q].name == name) return q;
  return std::nullopt;
}

StateKind Adga::level_kind(int level) const {
  if (level < 0 || static_cast<std::size_t>(level) >= level_kinds_.size()) return StateKind::existential;
  return level_kinds_[level];
}

StateSet Adga::permanent_states() const {
  StateSet out;
  for (StateId q = 0; q < spec_.states.size(); ++q)
    if (is_permanent(q)) out.insert(q);
  return out;
}

Adga Adga::from_spec(AdgaSpec spec) {
  ValidationResult r = validate(std::move(spec));
  if (!r.automaton) {
    std::string msg = "invalid automaton:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw Error(msg);
  }
  return std::move(*r.automaton);
}

ValidationResult validate(AdgaSpec spec) {
  ValidationResult out;
  auto& bad = out.violations;
  const std::size_t n = spec.states.size();
  const std::size_t sigma = spec.alphabets.nodes.size();
  const std::size_t gamma = spec.alphabets.edges.size();

  if (sigma == 0) bad.push_back("node alphabet is empty");
  if (gamma == 0) bad.push_back("edge alphabet is empty");
  if (n == 0) bad.push_back("automaton has no states");

  {
    std::unordered_map<std::string, StateId> seen;
    for (StateId q = 0; q < n; ++q) {
      const auto& name = spec.states[q].name;
      if (!valid_state_name(name)) bad.push_back("state name '" + name + "' is not a valid identifier");
      if (!seen.emplace(name, q).second) bad.push_back("state '" + name + "' is declared twice");
    }
  }
  auto name_of = [&](StateId q) { return q < n ? spec.states[q].name : "#" + std::to_string(q); };
  auto is_perm = [&](StateId q) { return q < n && spec.states[q].kind == StateKind::permanent; };

  bool any_permanent = false;
  for (const auto& s : spec.states) any_permanent |= s.kind == StateKind::permanent;
  if (n > 0 && !any_permanent) bad.push_back("no permanent states (Q_P must be nonempty)");

  if (spec.init.size() != sigma)
    bad.push_back("init map covers " + std::to_string(spec.init.size()) + " labels, expected " + std::to_string(sigma));
  for (StateId q : spec.init)
    if (q >= n) bad.push_back("init maps to an undeclared state");

  bool rules_ok = true;
  for (std::size_t r = 0; r < spec.rules.size(); ++r) {
    const auto& rule = spec.rules[r];
    const std::string where = "rule " + std::to_string(r + 1) + " from '" + name_of(rule.source) + "'";
    if (rule.source >= n) {
      bad.push_back(where + ": undeclared source state");
      rules_ok = false;
      continue;
    }
    if (is_perm(rule.source)) bad.push_back(where + ": explicit rule from a permanent state");
    if (rule.targets.empty()) bad.push_back(where + ": empty target set");
    for (StateId t : rule.targets)
      if (t >= n) {
        bad.push_back(where + ": undeclared target state");
        rules_ok = false;
      }
    rule.guard.mentioned_states().for_each([&](StateId q) {
      if (q >= n) bad.push_back(where + ": guard mentions an undeclared state");
    });
    for (const auto& [channel, states] : rule.guard.atoms())
      if (channel != Condition::any_channel && (channel < 0 || static_cast<std::size_t>(channel) >= gamma))
        bad.push_back(where + ": guard mentions an unknown edge symbol");
  }

  for (const auto& [channel, states] : spec.acceptance.atoms()) {
    if (channel != 0) bad.push_back("acceptance condition reads a channel other than the occurrence set");
    states.for_each([&](StateId q) {
      if (!is_perm(q)) bad.push_back("accepting set mentions nonpermanent state '" + name_of(q) + "'");
    });
  }

  if (!bad.empty() || !rules_ok) return out;

  // Level assignment over the nonpermanent rule graph, in topological order.
  std::vector<std::vector<StateId>> preds(n);
  std::vector<std::vector<StateId>> succs(n);
  for (const auto& rule : spec.rules) {
    if (is_perm(rule.source)) continue;
    for (StateId t : rule.targets) {
      if (is_perm(t)) continue;
      succs[rule.source].push_back(t);
      preds[t].push_back(rule.source);
    }
  }
  std::vector<int> indegree(n, 0);
  for (StateId q = 0; q < n; ++q) {
    std::sort(preds[q].begin(), preds[q].end());
    preds[q].erase(std::unique(preds[q].begin(), preds[q].end()), preds[q].end());
    indegree[q] = static_cast<int>(preds[q].size());
  }
  std::vector<int> level(n, -1);
  std::deque<StateId> ready;
  for (StateId q = 0; q < n; ++q)
    if (!is_perm(q) && indegree[q] == 0) ready.push_back(q);
  std::size_t processed = 0;
  std::size_t nonperm = 0;
  for (StateId q = 0; q < n; ++q) nonperm += is_perm(q) ? 0 : 1;
  while (!ready.empty()) {
    const StateId q = ready.front();
    ready.pop_front();
    ++processed;
    int lv = 0;
    if (!preds[q].empty()) {
      lv = level[preds[q].front()] + 1;
      for (StateId p : preds[q])
        if (level[p] + 1 != lv) {
          bad.push_back("state '" + name_of(q) + "' is reachable at levels " + std::to_string(lv) + " and " +
                        std::to_string(level[p] + 1));
          break;
        }
    }
    level[q] = lv;
    for (StateId t : succs[q])
      if (--indegree[t] == 0) ready.push_back(t);
  }
  if (processed != nonperm) {
    for (StateId q = 0; q < n; ++q)
      if (!is_perm(q) && level[q] < 0) bad.push_back("state '" + name_of(q) + "' lies on a cycle of transitions");
    return out;
  }
  int max_nonperm = -1;
  for (StateId q = 0; q < n; ++q)
    if (!is_perm(q)) max_nonperm = std::max(max_nonperm, level[q]);
  const int perm_level = max_nonperm + 1;
  for (StateId q = 0; q < n; ++q)
    if (is_perm(q)) level[q] = perm_level;

  std::vector<std::optional<StateKind>> kinds(static_cast<std::size_t>(perm_level) + 1);
  kinds[perm_level] = StateKind::permanent;
  for (StateId q = 0; q < n; ++q) {
    if (is_perm(q)) continue;
    auto& k = kinds[level[q]];
    if (!k) {
      k = spec.states[q].kind;
    } else if (*k != spec.states[q].kind) {
      bad.push_back("level " + std::to_string(level[q]) + " mixes " + kind_word(*k) + " and " +
                    kind_word(spec.states[q].kind) + " states (at '" + name_of(q) + "')");
    }
  }

  for (SymbolId a = 0; a < sigma; ++a) {
    const StateId q = spec.init[a];
    if (!is_perm(q) && level[q] != 0)
      bad.push_back("init maps label '" + spec.alphabets.nodes.name(a) + "' to '" + name_of(q) + "' on interior level " +
                    std::to_string(level[q]));
  }

  for (std::size_t r = 0; r < spec.rules.size(); ++r) {
    const auto& rule = spec.rules[r];
    for (StateId t : rule.targets) {
      if (!is_perm(t) && level[t] != level[rule.source] + 1) {
        bad.push_back("rule " + std::to_string(r + 1) + " from '" + name_of(rule.source) + "' (level " +
                      std::to_string(level[rule.source]) + ") targets '" + name_of(t) + "' on level " +
                      std::to_string(level[t]));
      }
      if (spec.states[t].kind != spec.states[rule.targets.front()].kind)
        bad.push_back("rule " + std::to_string(r + 1) + " from '" + name_of(rule.source) + "' mixes target kinds");
    }
  }

  if (!bad.empty()) return out;

  if (spec.acceptance.eval_occurrence(StateSet{}))
    out.warnings.push_back("the empty occurrence set is accepting; it is unreachable since graphs are nonempty");

  Adga a;
  for (StateId q = 0; q < n; ++q) spec.states[q].level = level[q];
  a.rules_by_source_.assign(n, {});
  for (std::size_t r = 0; r < spec.rules.size(); ++r) a.rules_by_source_[spec.rules[r].source].push_back(r);
  a.level_kinds_.resize(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) a.level_kinds_[i] = kinds[i].value_or(StateKind::existential);
  a.length_ = perm_level;
  a.warnings_ = out.warnings;
  a.spec_ = std::move(spec);
  out.automaton = std::move(a);
  return out;
}

// ---------------------------------------------------------------------------
// Runs

std::vector<StateSet> received_family(const Graph& g, const Configuration& c, NodeId v) {
  std::vector<StateSet> out(g.edge_symbols());
  for (SymbolId s = 0; s < g.edge_symbols(); ++s)
    for (NodeId u : g.in_neighbors(s, v)) out[s].insert(c.states[u]);
  return out;
}

std::vector<StateId> local_successors(const Adga& a, StateId q, std::span<const StateSet> received) {
  if (a.is_permanent(q)) return {q};
  std::vector<StateId> out;
  for (std::size_t r : a.rules_from(q)) {
    const auto& rule = a.rules()[r];
    if (!rule.guard.eval(received)) continue;
    for (StateId t : rule.targets)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<StateId>> local_choices(const Adga& a, const Graph& g, const Configuration& c) {
  std::vector<std::vector<StateId>> choices(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto recv = received_family(g, c, v);
    choices[v] = local_successors(a, c.states[v], recv);
  }
  return choices;
}

/// Calls f on every combination; f returns false to stop early.
template <typename F>
void for_each_combination(const std::vector<std::vector<StateId>>& choices, F&& f) {
  for (const auto& ch : choices)
    if (ch.empty()) return;
  std::vector<std::size_t> idx(choices.size(), 0);
  Configuration c;
  c.states.resize(choices.size());
  for (std::size_t v = 0; v < choices.size(); ++v) c.states[v] = choices[v][0];
  while (true) {
    if (!f(c)) return;
    std::size_t v = 0;
    while (v < choices.size()) {
      if (++idx[v] < choices[v].size()) {
        c.states[v] = choices[v][idx[v]];
        break;
      }
      idx[v] = 0;
      c.states[v] = choices[v][0];
      ++v;
    }
    if (v == choices.size()) return;
  }
}

struct ConfigHash {
  std::size_t operator()(const std::vector<StateId>& s) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (StateId q : s) h = (h ^ q) * 1099511628211ULL;
    return h;
  }
};

StateKind configuration_kind(const Adga& a, const Configuration& c) {
  for (StateId q : c.states)
    if (!a.is_permanent(q)) return a.kind(q);
  return StateKind::permanent;
}

/// Game evaluation with a per-call memo and reusable buffers.
class Evaluator {
 public:
  Evaluator(const Adga& a, const Graph& g)
      : a_(a), g_(g), gamma_(g.edge_symbols()), recv_(g.node_count() * g.edge_symbols()) {}

  bool eval(const Configuration& start) {
    Configuration c = start;
    // Follow forced steps without memoizing.
    while (true) {
      const StateKind kind = configuration_kind(a_, c);
      if (kind == StateKind::permanent) return accepting(c);
      auto choices = compute_choices(c);
      bool forced = true;
      for (const auto& ch : choices) {
        if (ch.empty()) return kind == StateKind::universal;
        forced &= ch.size() == 1;
      }
      if (forced) {
        for (std::size_t v = 0; v < choices.size(); ++v) c.states[v] = choices[v][0];
        continue;
      }
      return branch(c, kind, choices);
    }
  }

  bool accepting(const Configuration& c) const {
    StateSet occ;
    for (StateId q : c.states) occ.insert(q);
    return a_.acceptance().eval_occurrence(occ);
  }

  std::vector<std::vector<StateId>> compute_choices(const Configuration& c) {
    const std::size_t n = g_.node_count();
    for (auto& s : recv_) s.clear();
    for (const Edge& e : g_.edges()) recv_[e.to * gamma_ + e.symbol].insert(c.states[e.from]);
    std::vector<std::vector<StateId>> choices(n);
    for (NodeId v = 0; v < n; ++v)
      choices[v] = local_successors(a_, c.states[v], std::span<const StateSet>(recv_.data() + v * gamma_, gamma_));
    return choices;
  }

  /// Memoized value of a configuration (used by witness extraction).
  bool value(const Configuration& c) {
    const StateKind kind = configuration_kind(a_, c);
    if (kind == StateKind::permanent) return accepting(c);
    if (auto it = memo_.find(c.states); it != memo_.end()) return it->second;
    auto choices = compute_choices(c);
    return branch(c, kind, choices);
  }

 private:
  bool branch(const Configuration& c, StateKind kind, const std::vector<std::vector<StateId>>& choices) {
    if (auto it = memo_.find(c.states); it != memo_.end()) return it->second;
    const bool existential = kind == StateKind::existential;
    bool result = !existential;
    bool any = false;
    for_each_combination(choices, [&](const Configuration& next) {
      any = true;
      const bool v = value(next);
      if (v == existential) {
        result = existential;
        return false;
      }
      return true;
    });
    if (!any) result = !existential;
    memo_.emplace(c.states, result);
    return result;
  }

  const Adga& a_;
  const Graph& g_;
  std::size_t gamma_;
  std::vector<StateSet> recv_;
  std::unordered_map<std::vector<StateId>, bool, ConfigHash> memo_;
};

void check_alphabets(const Adga& a, const LabeledGraph& g) {
  if (g.graph.edge_symbols() != a.alphabets().edges.size())
    throw DomainError("graph has " + std::to_string(g.graph.edge_symbols()) + " edge symbols, automaton expects " +
                      std::to_string(a.alphabets().edges.size()));
  for (SymbolId l : g.labels)
    if (l >= a.alphabets().nodes.size()) throw DomainError("graph label outside the automaton's node alphabet");
}

}  // namespace

std::vector<Configuration> global_successors(const Adga& a, const Graph& g, const Configuration& c) {
  std::vector<Configuration> out;
  for_each_combination(local_choices(a, g, c), [&](const Configuration& next) {
    out.push_back(next);
    return true;
  });
  return out;
}

Configuration initial_configuration(const Adga& a, const LabeledGraph& g) {
  check_alphabets(a, g);
  Configuration c;
  c.states.reserve(g.node_count());
  for (SymbolId l : g.labels) c.states.push_back(a.init(l));
  return c;
}

bool is_permanent_configuration(const Adga& a, const Configuration& c) {
  return std::all_of(c.states.begin(), c.states.end(), [&](StateId q) { return a.is_permanent(q); });
}

bool accepts(const Adga& a, const LabeledGraph& g) {
  const Configuration init = initial_configuration(a, g);
  Evaluator ev(a, g.graph);
  return ev.eval(init);
}

std::optional<RunDag> witness_run(const Adga& a, const LabeledGraph& g) {
  const Configuration init = initial_configuration(a, g);
  Evaluator ev(a, g.graph);
  if (!ev.value(init)) return std::nullopt;

  RunDag dag;
  std::unordered_map<std::vector<StateId>, std::size_t, ConfigHash> index;
  std::deque<std::size_t> work;
  auto intern = [&](const Configuration& c) {
    auto [it, fresh] = index.emplace(c.states, dag.nodes.size());
    if (fresh) {
      dag.nodes.push_back(c);
      dag.successors.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(init);
  while (!work.empty()) {
    const std::size_t i = work.front();
    work.pop_front();
    const Configuration c = dag.nodes[i];
    const StateKind kind = configuration_kind(a, c);
    if (kind == StateKind::permanent) continue;
    std::vector<std::size_t> succ;
    for_each_combination(ev.compute_choices(c), [&](const Configuration& next) {
      if (kind == StateKind::existential) {
        if (!ev.value(next)) return true;
        succ.push_back(intern(next));
        return false;
      }
      succ.push_back(intern(next));
      return true;
    });
    dag.successors[i] = std::move(succ);
  }
  return dag;
}

// ---------------------------------------------------------------------------
// Classes

std::string to_string(AutomatonClass c) {
  switch (c) {
    case AutomatonClass::adga:
      return "ADGA";
    case AutomatonClass::ndga:
      return "NDGA";
    case AutomatonClass::ddga:
      return "DDGA";
  }
  return "?";
}

bool is_syntactically_deterministic(const Adga& a) {
  const int gamma = static_cast<int>(a.alphabets().edges.size());
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (a.is_permanent(q)) continue;
    if (a.kind(q) == StateKind::universal) return false;
    std::map<StateId, std::vector<Condition>> by_target;
    std::vector<Condition> all;
    for (std::size_t r : a.rules_from(q)) {
      const auto& rule = a.rules()[r];
      if (rule.targets.size() != 1) {
        if (satisfiable(rule.guard, gamma)) return false;
        continue;
      }
      by_target[rule.targets.front()].push_back(rule.guard);
      all.push_back(rule.guard);
    }
    if (!valid(Condition::any_of(all), gamma)) return false;
    std::vector<Condition> regions;
    for (auto& [t, guards] : by_target) regions.push_back(Condition::any_of(guards));
    for (std::size_t i = 0; i < regions.size(); ++i)
      for (std::size_t j = i + 1; j < regions.size(); ++j)
        if (satisfiable(regions[i] && regions[j], gamma)) return false;
  }
  return true;
}

AutomatonClass classify(const Adga& a) {
  const int cached = a.class_cache_->load();
  if (cached >= 0) return static_cast<AutomatonClass>(cached);
  AutomatonClass result = AutomatonClass::ddga;
  for (const auto& s : a.states())
    if (s.kind == StateKind::universal) result = AutomatonClass::adga;
  if (result == AutomatonClass::ddga && !is_syntactically_deterministic(a)) result = AutomatonClass::ndga;
  a.class_cache_->store(static_cast<int>(result));
  return result;
}

bool is_deterministic_on(const Adga& a, const LabeledGraph& g) {
  const Configuration init = initial_configuration(a, g);
  std::unordered_set<std::vector<StateId>, ConfigHash> seen{init.states};
  std::deque<Configuration> work{init};
  while (!work.empty()) {
    Configuration c = std::move(work.front());
    work.pop_front();
    if (is_permanent_configuration(a, c)) continue;
    const auto next = global_successors(a, g.graph, c);
    if (next.size() != 1) return false;
    if (seen.insert(next.front().states).second) work.push_back(next.front());
  }
  return true;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::string fresh_name(const AdgaSpec& spec, std::string base) {
  auto taken = [&](const std::string& s) {
    return std::any_of(spec.states.begin(), spec.states.end(), [&](const StateDecl& d) { return d.name == s; });
  };
  while (taken(base)) base += "'";
  return base;
}

}  // namespace

Adga totalize(const Adga& a) {
  const int gamma = static_cast<int>(a.alphabets().edges.size());
  AdgaSpec spec = a.spec();
  std::map<int, StateId> dead;  // level of the stuck source -> dead state
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (a.is_permanent(q)) continue;
    std::vector<Condition> guards;
    for (std::size_t r : a.rules_from(q)) guards.push_back(a.rules()[r].guard);
    const Condition uncovered = !Condition::any_of(guards);
    if (!satisfiable(uncovered, gamma)) continue;
    const int lv = a.level(q);
    auto it = dead.find(lv);
    if (it == dead.end()) {
      const std::string base = std::string("dead_") + kind_letter(a.kind(q)) + "@" + std::to_string(lv);
      spec.states.push_back({fresh_name(spec, base), StateKind::permanent, 0});
      it = dead.emplace(lv, static_cast<StateId>(spec.states.size() - 1)).first;
    }
    spec.rules.push_back({q, uncovered, {it->second}});
  }
  if (dead.empty()) return a;

  StateSet all_dead;
  for (const auto& [lv, d] : dead) all_dead.insert(d);
  std::vector<Condition> decided{!Condition::meets(0, all_dead) && a.acceptance()};
  StateSet earlier;
  for (const auto& [lv, d] : dead) {
    if (a.level_kind(lv) == StateKind::universal)
      decided.push_back(Condition::contains(0, d) && !Condition::meets(0, earlier));
    earlier.insert(d);
  }
  spec.acceptance = Condition::any_of(std::move(decided));
  return Adga::from_spec(std::move(spec));
}

Adga trim(const Adga& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> keep(n, false);
  std::deque<StateId> work;
  auto mark = [&](StateId q) {
    if (!keep[q]) {
      keep[q] = true;
      work.push_back(q);
    }
  };
  for (StateId q = 0; q < n; ++q)
    if (a.is_permanent(q)) keep[q] = true;
  for (StateId q : a.init_map()) mark(q);
  while (!work.empty()) {
    const StateId q = work.front();
    work.pop_front();
    for (std::size_t r : a.rules_from(q))
      for (StateId t : a.rules()[r].targets) mark(t);
  }
  if (std::all_of(keep.begin(), keep.end(), [](bool k) { return k; })) return a;

  std::vector<StateId> renumber(n, static_cast<StateId>(-1));
  AdgaSpec spec;
  spec.alphabets = a.alphabets();
  for (StateId q = 0; q < n; ++q)
    if (keep[q]) {
      renumber[q] = static_cast<StateId>(spec.states.size());
      spec.states.push_back(a.state(q));
    }
  auto remap = [&](int, const StateSet& s) {
    StateSet out;
    s.for_each([&](StateId q) {
      if (q < n && keep[q]) out.insert(renumber[q]);
    });
    return out;
  };
  for (StateId q : a.init_map()) spec.init.push_back(renumber[q]);
  for (const auto& r : a.rules()) {
    if (!keep[r.source]) continue;
    TransitionRule nr{renumber[r.source], r.guard.map_sets(remap), {}};
    for (StateId t : r.targets) nr.targets.push_back(renumber[t]);
    spec.rules.push_back(std::move(nr));
  }
  spec.acceptance = a.acceptance().map_sets(remap);
  return Adga::from_spec(std::move(spec));
}

Adga synchronize(const Adga& a, int length) {
  if (length < a.length())
    throw Error("cannot synchronize an automaton of length " + std::to_string(a.length()) + " to length " +
                std::to_string(length));
  const Adga t = totalize(a);
  const int len = t.length();
  const std::size_t n = t.state_count();

  // Earliest level at which each permanent state would be entered too early.
  std::vector<int> first_entry(n, length);
  if (length > 0)
    for (StateId q : t.init_map())
      if (t.is_permanent(q)) first_entry[q] = 0;
  for (const auto& rule : t.rules())
    for (StateId p : rule.targets) {
      const int entry = t.level(rule.source) + 1;
      if (t.is_permanent(p) && entry < length) first_entry[p] = std::min(first_entry[p], entry);
    }
  bool early = false;
  for (StateId p = 0; p < n; ++p) early |= t.is_permanent(p) && first_entry[p] < length;
  if (!early) return t;

  AdgaSpec spec = t.spec();
  // waiting[p][i] = state p@i for first_entry[p] <= i < length.
  std::vector<std::vector<StateId>> waiting(n);
  for (StateId p = 0; p < n; ++p) {
    if (!t.is_permanent(p) || first_entry[p] >= length) continue;
    waiting[p].assign(static_cast<std::size_t>(length), static_cast<StateId>(-1));
    for (int i = first_entry[p]; i < length; ++i) {
      const StateKind k = i < len ? t.level_kind(i) : StateKind::existential;
      spec.states.push_back({fresh_name(spec, t.state(p).name + "@" + std::to_string(i)), k, 0});
      waiting[p][i] = static_cast<StateId>(spec.states.size() - 1);
    }
  }
  auto widen = [&](int, const StateSet& s) {
    StateSet out = s;
    s.for_each([&](StateId p) {
      if (p < n)
        for (StateId w : waiting[p])
          if (w != static_cast<StateId>(-1)) out.insert(w);
    });
    return out;
  };
  for (auto& rule : spec.rules) {
    const int entry = t.level(rule.source) + 1;
    for (StateId& p : rule.targets)
      if (t.is_permanent(p) && entry < length) p = waiting[p][entry];
    rule.guard = rule.guard.map_sets(widen);
  }
  for (StateId& q : spec.init)
    if (t.is_permanent(q) && length > 0) q = waiting[q][0];
  for (StateId p = 0; p < n; ++p) {
    if (waiting[p].empty()) continue;
    for (int i = first_entry[p]; i < length; ++i) {
      const StateId next = i + 1 < length ? waiting[p][i + 1] : p;
      spec.rules.push_back({waiting[p][i], Condition::truth(), {next}});
    }
  }
  return Adga::from_spec(std::move(spec));
}

}  // namespace dga
