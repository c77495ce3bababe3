#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dga/state_set.hpp"

namespace dga {

/// Boolean combination of atoms "the received set on channel c meets T".
///
/// The same expression type serves two purposes:
///  - transition guards, where channel c is an edge symbol and the atom
///    reads the set of states received through c-edges;
///  - acceptance conditions, where there is a single channel (0) holding the
///    set of permanent states occurring in the final configuration.
///
/// Values are immutable and share structure.
class Condition {
 public:
  /// Atom channel meaning "any edge symbol".
  static constexpr int any_channel = -1;

  enum class Op { constant, atom, negation, conjunction, disjunction };

  struct Node {
    Op op = Op::constant;
    bool value = true;          // constant
    int channel = 0;            // atom
    StateSet states;            // atom
    std::vector<Condition> operands;  // negation (1), conjunction / disjunction (n)
  };

  Condition() : Condition(true) {}
  explicit Condition(bool value);

  static Condition truth() { return Condition(true); }
  static Condition falsity() { return Condition(false); }
  /// Atom; an empty state set makes the atom constant false.
  static Condition meets(int channel, StateSet states);
  static Condition contains(int channel, StateId state) { return meets(channel, StateSet{state}); }
  static Condition all_of(std::vector<Condition> parts);
  static Condition any_of(std::vector<Condition> parts);

  friend Condition operator!(const Condition& c);
  friend Condition operator&&(const Condition& a, const Condition& b) { return all_of({a, b}); }
  friend Condition operator||(const Condition& a, const Condition& b) { return any_of({a, b}); }

  Op op() const { return node_->op; }
  const Node& node() const { return *node_; }
  bool is_constant(bool v) const { return node_->op == Op::constant && node_->value == v; }

  /// Evaluates against one received set per channel. Atoms on channels
  /// outside the span read as empty.
  bool eval(std::span<const StateSet> received) const;
  /// Evaluates an acceptance condition against an occurrence set.
  bool eval_occurrence(const StateSet& occurring) const { return eval(std::span<const StateSet>(&occurring, 1)); }

  /// Rebuilds the expression with every atom's state set rewritten.
  Condition map_sets(const std::function<StateSet(int channel, const StateSet&)>& f) const;
  /// Replaces every any-channel atom by the disjunction over `channels` channels.
  Condition expand_channels(int channels) const;

  /// Union of all state sets mentioned by atoms.
  StateSet mentioned_states() const;
  /// Distinct (channel, set) atoms in first-occurrence order.
  std::vector<std::pair<int, StateSet>> atoms() const;

 private:
  explicit Condition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Decides whether some family of received sets (one per channel, drawn from
/// arbitrary subsets of the state universe) satisfies `c`. Any-channel atoms
/// are expanded over `channels` channels first.
bool satisfiable(const Condition& c, int channels);

/// `satisfiable(!c)` negated.
inline bool valid(const Condition& c, int channels) { return !satisfiable(!c, channels); }

}  // namespace dga
