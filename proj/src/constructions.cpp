#include "dga/constructions.hpp"

#include <algorithm>
#include <map>

#include "dga/builder.hpp"
#include "dga/error.hpp"

namespace dga {

namespace {

void require_same_alphabets(const Adga& a1, const Adga& a2, const char* op) {
  if (!(a1.alphabets() == a2.alphabets()))
    throw DomainError(std::string(op) + ": operands have different alphabets");
}

std::vector<StateKind> kind_pattern(const Adga& a) {
  std::vector<StateKind> k;
  for (int i = 0; i < a.length(); ++i) k.push_back(a.level_kind(i));
  return k;
}

/// Shortest common supersequence of two kind strings, with the positions
/// each input occupies in it.
struct Alignment {
  std::vector<StateKind> kinds;
  std::vector<int> pos1;
  std::vector<int> pos2;
};

Alignment align(const std::vector<StateKind>& x, const std::vector<StateKind>& y) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<std::vector<int>> len(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n + 1; i-- > 0;)
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        len[i][j] = static_cast<int>(m - j);
      } else if (j == m) {
        len[i][j] = static_cast<int>(n - i);
      } else if (x[i] == y[j]) {
        len[i][j] = 1 + len[i + 1][j + 1];
      } else {
        len[i][j] = 1 + std::min(len[i + 1][j], len[i][j + 1]);
      }
    }
  Alignment al;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const int here = static_cast<int>(al.kinds.size());
    if (i < n && j < m && x[i] == y[j]) {
      al.kinds.push_back(x[i]);
      al.pos1.push_back(here);
      al.pos2.push_back(here);
      ++i;
      ++j;
    } else if (j == m || (i < n && len[i][j] == 1 + len[i + 1][j])) {
      al.kinds.push_back(x[i++]);
      al.pos1.push_back(here);
    } else {
      al.kinds.push_back(y[j++]);
      al.pos2.push_back(here);
    }
  }
  return al;
}

}  // namespace

Adga complement(const Adga& a) {
  AdgaSpec spec = a.spec();
  spec.acceptance = !spec.acceptance;
  if (classify(a) != AutomatonClass::ddga) {
    for (auto& s : spec.states) {
      if (s.kind == StateKind::existential)
        s.kind = StateKind::universal;
      else if (s.kind == StateKind::universal)
        s.kind = StateKind::existential;
    }
  }
  return Adga::from_spec(std::move(spec));
}

Adga union_of(const Adga& a1, const Adga& a2) {
  require_same_alphabets(a1, a2, "union");
  const Adga t[2] = {trim(totalize(a1)), trim(totalize(a2))};
  const Alignment al = align(kind_pattern(t[0]), kind_pattern(t[1]));
  const std::vector<int>* pos[2] = {&al.pos1, &al.pos2};
  const int top = static_cast<int>(al.kinds.size()) + 1;  // permanent level of the union
  const Alphabets& alpha = t[0].alphabets();

  SpecBuilder b(alpha);
  std::vector<StateId> label_state;
  for (SymbolId l = 0; l < alpha.nodes.size(); ++l) {
    label_state.push_back(b.state("lab." + alpha.nodes.name(l), StateKind::existential));
    b.init(l, label_state.back());
  }
  const StateId conflict = b.state("conflict", StateKind::permanent);

  // Tagged copies and the union level of each copy state.
  std::vector<StateId> copy[2];
  std::vector<int> union_level[2];
  StateSet members[2];
  StateSet permanents[2];
  for (int i = 0; i < 2; ++i) {
    for (StateId q = 0; q < t[i].state_count(); ++q) {
      const auto& d = t[i].state(q);
      copy[i].push_back(b.state(std::to_string(i + 1) + "." + d.name, d.kind));
      members[i].insert(copy[i].back());
      if (d.kind == StateKind::permanent) permanents[i].insert(copy[i].back());
      union_level[i].push_back(d.kind == StateKind::permanent ? top : 1 + (*pos[i])[d.level]);
    }
  }
  // Delay chains: delay[i][(q, level)] is the state that reaches copy q of
  // automaton i at its union level after waiting from `level`.
  std::map<std::pair<StateId, int>, StateId> delay[2];
  std::function<StateId(int, StateId, int)> reach = [&](int i, StateId q, int from_level) -> StateId {
    if (t[i].is_permanent(q) || union_level[i][q] == from_level) return copy[i][q];
    auto key = std::make_pair(q, from_level);
    if (auto it = delay[i].find(key); it != delay[i].end()) return it->second;
    const StateId d = b.state(std::to_string(i + 1) + "." + t[i].state(q).name + "@" + std::to_string(from_level),
                              al.kinds[from_level - 1]);
    delay[i].emplace(key, d);
    members[i].insert(d);
    b.rule(d, Condition::truth(), {reach(i, q, from_level + 1)});
    return d;
  };

  for (SymbolId l = 0; l < alpha.nodes.size(); ++l)
    for (int i = 0; i < 2; ++i) b.rule(label_state[l], Condition::truth(), {reach(i, t[i].init(l), 1)});

  for (int i = 0; i < 2; ++i) {
    const int other = 1 - i;
    auto tag = [&](int, const StateSet& s) {
      StateSet out;
      s.for_each([&](StateId q) { out.insert(copy[i][q]); });
      return out;
    };
    for (const auto& r : t[i].rules()) {
      const int from = union_level[i][r.source];
      const Condition foreign = Condition::meets(Condition::any_channel, members[other] | StateSet{conflict});
      std::vector<StateId> targets;
      for (StateId q : r.targets) targets.push_back(reach(i, q, from + 1));
      b.rule(copy[i][r.source], r.guard.map_sets(tag) && !foreign, targets);
    }
    for (StateId q = 0; q < t[i].state_count(); ++q) {
      if (t[i].is_permanent(q)) continue;
      b.rule(copy[i][q], Condition::meets(Condition::any_channel, members[other] | StateSet{conflict}), {conflict});
    }
  }
  // Delay states of one copy must also notice the other copy.
  for (int i = 0; i < 2; ++i)
    for (const auto& [key, d] : delay[i])
      b.rule(d, Condition::meets(Condition::any_channel, members[1 - i] | StateSet{conflict}), {conflict});

  auto tagged_acceptance = [&](int i) {
    return t[i].acceptance().map_sets([&](int, const StateSet& s) {
      StateSet out;
      s.for_each([&](StateId q) { out.insert(copy[i][q]); });
      return out;
    });
  };
  const Condition bad1 = Condition::meets(0, permanents[1] | StateSet{conflict});
  const Condition bad0 = Condition::meets(0, permanents[0] | StateSet{conflict});
  b.acceptance((tagged_acceptance(0) && !bad1) || (tagged_acceptance(1) && !bad0));
  return b.build();
}

Adga product(const Adga& a1, const Adga& a2, Combine combine) {
  require_same_alphabets(a1, a2, "product");
  const auto c1 = classify(a1);
  const auto c2 = classify(a2);
  if (combine == Combine::conjunction && (c1 == AutomatonClass::adga || c2 == AutomatonClass::adga))
    throw ClassError("product with conjunction needs two nondeterministic automata; use intersect_adga for alternating ones");
  if (combine == Combine::disjunction && (c1 != AutomatonClass::ddga || c2 != AutomatonClass::ddga))
    throw ClassError("product with disjunction needs two deterministic automata; use union for the general case");

  const int length = std::max(a1.length(), a2.length());
  const Adga s[2] = {trim(synchronize(a1, length)), trim(synchronize(a2, length))};
  const int gamma = static_cast<int>(s[0].alphabets().edges.size());

  SpecBuilder b(s[0].alphabets());
  std::map<std::pair<StateId, StateId>, StateId> pair_id;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<std::vector<StateId>> by_level(static_cast<std::size_t>(length) + 1);
  auto get = [&](StateId q1, StateId q2) {
    auto key = std::make_pair(q1, q2);
    if (auto it = pair_id.find(key); it != pair_id.end()) return it->second;
    const StateKind k = s[0].kind(q1);
    const StateId id = b.state("<" + s[0].state(q1).name + "," + s[1].state(q2).name + ">", k);
    pair_id.emplace(key, id);
    pairs.push_back(key);
    by_level[s[0].level(q1)].push_back(id);
    return id;
  };
  for (SymbolId l = 0; l < s[0].alphabets().nodes.size(); ++l) b.init(l, get(s[0].init(l), s[1].init(l)));

  // Atom sets over component states become sets of pairs on the same level.
  auto lift = [&](int component, int level) {
    return [&, component, level](int, const StateSet& set) {
      StateSet out;
      for (StateId id : by_level[level]) {
        const auto& [q1, q2] = pairs[id];
        if (set.contains(component == 0 ? q1 : q2)) out.insert(id);
      }
      return out;
    };
  };
  for (int level = 0; level < length; ++level) {
    const std::vector<StateId> current = by_level[level];
    for (StateId id : current) {
      const auto [q1, q2] = pairs[id];
      for (std::size_t r1 : s[0].rules_from(q1))
        for (std::size_t r2 : s[1].rules_from(q2)) {
          const auto& x = s[0].rules()[r1];
          const auto& y = s[1].rules()[r2];
          const Condition guard = x.guard.map_sets(lift(0, level)) && y.guard.map_sets(lift(1, level));
          if (!satisfiable(guard, gamma)) continue;
          std::vector<StateId> targets;
          for (StateId t1 : x.targets)
            for (StateId t2 : y.targets) targets.push_back(get(t1, t2));
          b.rule(id, guard, targets);
        }
    }
  }
  const Condition f1 = s[0].acceptance().map_sets(lift(0, length));
  const Condition f2 = s[1].acceptance().map_sets(lift(1, length));
  b.acceptance(combine == Combine::conjunction ? (f1 && f2) : (f1 || f2));
  return b.build();
}

Adga intersect_adga(const Adga& a1, const Adga& a2) {
  require_same_alphabets(a1, a2, "intersection");
  return complement(union_of(complement(a1), complement(a2)));
}

Adga project(const Adga& a, const Projection& h) {
  if (!(h.source() == a.alphabets().nodes)) throw DomainError("projection source differs from the automaton's node alphabet");
  const Adga t = trim(a);
  SpecBuilder b({h.target(), t.alphabets().edges});
  std::vector<StateId> label_state;
  for (SymbolId l = 0; l < h.target().size(); ++l) {
    label_state.push_back(b.state("lab." + h.target().name(l), StateKind::existential));
    b.init(l, label_state.back());
  }
  std::vector<StateId> copy;
  for (const auto& d : t.states()) copy.push_back(b.state("in." + d.name, d.kind));
  for (SymbolId src = 0; src < h.source().size(); ++src)
    b.rule(label_state[h(src)], Condition::truth(), {copy[t.init(src)]});
  auto shift = [&](int, const StateSet& s) {
    StateSet out;
    s.for_each([&](StateId q) { out.insert(copy[q]); });
    return out;
  };
  for (const auto& r : t.rules()) {
    std::vector<StateId> targets;
    for (StateId q : r.targets) targets.push_back(copy[q]);
    b.rule(copy[r.source], r.guard.map_sets(shift), targets);
  }
  b.acceptance(t.acceptance().map_sets(shift));
  return b.build();
}

Adga relabel(const Adga& a, const SymbolSet& nodes, const std::function<SymbolId(SymbolId)>& g) {
  AdgaSpec spec = a.spec();
  spec.alphabets.nodes = nodes;
  spec.init.clear();
  for (SymbolId l = 0; l < nodes.size(); ++l) spec.init.push_back(a.init(g(l)));
  return trim(Adga::from_spec(std::move(spec)));
}

}  // namespace dga
