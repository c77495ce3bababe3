#include "dga/condition.hpp"

#include <algorithm>
#include <unordered_map>

namespace dga {

Condition::Condition(bool value) {
  static const auto t = std::make_shared<const Node>(Node{Op::constant, true, 0, {}, {}});
  static const auto f = std::make_shared<const Node>(Node{Op::constant, false, 0, {}, {}});
  node_ = value ? t : f;
}

Condition Condition::meets(int channel, StateSet states) {
  if (states.empty()) return Condition(false);
  Node n;
  n.op = Op::atom;
  n.channel = channel;
  n.states = std::move(states);
  return Condition(std::make_shared<const Node>(std::move(n)));
}

Condition Condition::all_of(std::vector<Condition> parts) {
  std::vector<Condition> kept;
  for (auto& p : parts) {
    if (p.is_constant(false)) return Condition(false);
    if (p.is_constant(true)) continue;
    if (p.op() == Op::conjunction) {
      for (const auto& q : p.node().operands) kept.push_back(q);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return Condition(true);
  if (kept.size() == 1) return kept.front();
  Node n;
  n.op = Op::conjunction;
  n.operands = std::move(kept);
  return Condition(std::make_shared<const Node>(std::move(n)));
}

Condition Condition::any_of(std::vector<Condition> parts) {
  std::vector<Condition> kept;
  for (auto& p : parts) {
    if (p.is_constant(true)) return Condition(true);
    if (p.is_constant(false)) continue;
    if (p.op() == Op::disjunction) {
      for (const auto& q : p.node().operands) kept.push_back(q);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return Condition(false);
  if (kept.size() == 1) return kept.front();
  Node n;
  n.op = Op::disjunction;
  n.operands = std::move(kept);
  return Condition(std::make_shared<const Node>(std::move(n)));
}

Condition operator!(const Condition& c) {
  switch (c.op()) {
    case Condition::Op::constant:
      return Condition(!c.node().value);
    case Condition::Op::negation:
      return c.node().operands.front();
    default: {
      Condition::Node n;
      n.op = Condition::Op::negation;
      n.operands = {c};
      return Condition(std::make_shared<const Condition::Node>(std::move(n)));
    }
  }
}

bool Condition::eval(std::span<const StateSet> received) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::atom:
      if (n.channel == any_channel) {
        for (const auto& s : received)
          if (s.intersects(n.states)) return true;
        return false;
      }
      return static_cast<std::size_t>(n.channel) < received.size() &&
             received[static_cast<std::size_t>(n.channel)].intersects(n.states);
    case Op::negation:
      return !n.operands.front().eval(received);
    case Op::conjunction:
      for (const auto& o : n.operands)
        if (!o.eval(received)) return false;
      return true;
    case Op::disjunction:
      for (const auto& o : n.operands)
        if (o.eval(received)) return true;
      return false;
  }
  return false;
}

Condition Condition::map_sets(const std::function<StateSet(int, const StateSet&)>& f) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant:
      return *this;
    case Op::atom:
      return meets(n.channel, f(n.channel, n.states));
    case Op::negation:
      return !n.operands.front().map_sets(f);
    case Op::conjunction:
    case Op::disjunction: {
      std::vector<Condition> parts;
      parts.reserve(n.operands.size());
      for (const auto& o : n.operands) parts.push_back(o.map_sets(f));
      return n.op == Op::conjunction ? all_of(std::move(parts)) : any_of(std::move(parts));
    }
  }
  return *this;
}

Condition Condition::expand_channels(int channels) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant:
      return *this;
    case Op::atom: {
      if (n.channel != any_channel) return *this;
      std::vector<Condition> parts;
      for (int c = 0; c < channels; ++c) parts.push_back(meets(c, n.states));
      return any_of(std::move(parts));
    }
    case Op::negation:
      return !n.operands.front().expand_channels(channels);
    case Op::conjunction:
    case Op::disjunction: {
      std::vector<Condition> parts;
      for (const auto& o : n.operands) parts.push_back(o.expand_channels(channels));
      return n.op == Op::conjunction ? all_of(std::move(parts)) : any_of(std::move(parts));
    }
  }
  return *this;
}

StateSet Condition::mentioned_states() const {
  StateSet out;
  const Node& n = *node_;
  if (n.op == Op::atom) out |= n.states;
  for (const auto& o : n.operands) out |= o.mentioned_states();
  return out;
}

std::vector<std::pair<int, StateSet>> Condition::atoms() const {
  std::vector<std::pair<int, StateSet>> out;
  std::function<void(const Condition&)> walk = [&](const Condition& c) {
    const Node& n = c.node();
    if (n.op == Op::atom) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& a) {
        return a.first == n.channel && a.second == n.states;
      });
      if (!seen) out.emplace_back(n.channel, n.states);
    }
    for (const auto& o : n.operands) walk(o);
  };
  walk(*this);
  return out;
}

namespace {

// Condition flattened over numbered atoms, for three-valued evaluation.
struct Flat {
  Condition::Op op = Condition::Op::constant;
  bool value = false;
  int atom = -1;
  std::vector<Flat> kids;
};

struct AtomKey {
  int channel;
  StateSet states;
  bool operator==(const AtomKey& o) const { return channel == o.channel && states == o.states; }
};

struct AtomKeyHash {
  std::size_t operator()(const AtomKey& k) const { return k.states.hash() * 31U + static_cast<std::size_t>(k.channel + 1); }
};

class Solver {
 public:
  explicit Solver(const Condition& c) { root_ = flatten(c); }

  bool solve() {
    assignment_.assign(atoms_.size(), -1);
    return search(0);
  }

 private:
  Flat flatten(const Condition& c) {
    Flat f;
    const auto& n = c.node();
    f.op = n.op;
    f.value = n.value;
    if (n.op == Condition::Op::atom) {
      AtomKey key{n.channel, n.states};
      auto it = index_.find(key);
      if (it == index_.end()) {
        it = index_.emplace(key, static_cast<int>(atoms_.size())).first;
        atoms_.push_back(key);
      }
      f.atom = it->second;
    }
    for (const auto& o : n.operands) f.kids.push_back(flatten(o));
    return f;
  }

  // -1 unknown, 0 false, 1 true
  int eval3(const Flat& f) const {
    switch (f.op) {
      case Condition::Op::constant:
        return f.value ? 1 : 0;
      case Condition::Op::atom:
        return assignment_[static_cast<std::size_t>(f.atom)];
      case Condition::Op::negation: {
        const int v = eval3(f.kids.front());
        return v < 0 ? -1 : 1 - v;
      }
      case Condition::Op::conjunction: {
        int result = 1;
        for (const auto& k : f.kids) {
          const int v = eval3(k);
          if (v == 0) return 0;
          if (v < 0) result = -1;
        }
        return result;
      }
      case Condition::Op::disjunction: {
        int result = 0;
        for (const auto& k : f.kids) {
          const int v = eval3(k);
          if (v == 1) return 1;
          if (v < 0) result = -1;
        }
        return result;
      }
    }
    return -1;
  }

  // A partial assignment is realizable iff, per channel, every atom assigned
  // true keeps a state outside the union of the atoms assigned false.
  bool consistent() const {
    std::unordered_map<int, StateSet> forbidden;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (assignment_[i] == 0) forbidden[atoms_[i].channel] |= atoms_[i].states;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (assignment_[i] != 1) continue;
      auto it = forbidden.find(atoms_[i].channel);
      if (it != forbidden.end() && atoms_[i].states.subset_of(it->second)) return false;
    }
    return true;
  }

  bool search(std::size_t next) {
    const int v = eval3(root_);
    if (v == 0) return false;
    if (v == 1) return true;
    while (next < atoms_.size() && assignment_[next] != -1) ++next;
    if (next == atoms_.size()) return false;
    for (int value : {1, 0}) {
      assignment_[next] = value;
      if (consistent() && search(next + 1)) return true;
    }
    assignment_[next] = -1;
    return false;
  }

  Flat root_;
  std::vector<AtomKey> atoms_;
  std::unordered_map<AtomKey, int, AtomKeyHash> index_;
  std::vector<int> assignment_;
};

}  // namespace

bool satisfiable(const Condition& c, int channels) {
  if (c.op() == Condition::Op::constant) return c.node().value;
  Solver solver(c.expand_channels(channels));
  return solver.solve();
}

}  // namespace dga
