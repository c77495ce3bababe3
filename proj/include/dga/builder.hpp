#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dga/automaton.hpp"

namespace dga {

/// Acceptance condition satisfied exactly by the listed occurrence sets,
/// where `permanent` is the universe of permanent states.
Condition occurrence_sets_condition(const std::vector<StateSet>& sets, const StateSet& permanent);

/// Explicit list of accepting occurrence sets (subsets of Q_P satisfying F),
/// in increasing binary order over Q_P. Throws dga::Error if Q_P has more
/// than `max_permanent` states.
std::vector<StateSet> accepting_sets(const Adga& a, std::size_t max_permanent = 20);

/// Incremental construction of an AdgaSpec by state name.
class SpecBuilder {
 public:
  explicit SpecBuilder(Alphabets alphabets);

  /// Declares a state; throws dga::Error on a duplicate name.
  StateId state(std::string name, StateKind kind);
  StateId id(std::string_view name) const;
  bool has(std::string_view name) const { return ids_.count(std::string(name)) != 0; }

  void init(SymbolId label, StateId q);
  void init(std::string_view label, StateId q) { init(spec_.alphabets.nodes.at(label, "label"), q); }
  void rule(StateId source, Condition guard, std::vector<StateId> targets);
  void acceptance(Condition c) { spec_.acceptance = std::move(c); }
  /// Acceptance by explicit occurrence sets over the permanent states declared so far.
  void accept_sets(const std::vector<std::vector<StateId>>& sets);

  const Alphabets& alphabets() const { return spec_.alphabets; }
  const AdgaSpec& spec() const { return spec_; }
  Adga build() const { return Adga::from_spec(spec_); }

 private:
  AdgaSpec spec_;
  std::unordered_map<std::string, StateId> ids_;
};

}  // namespace dga
