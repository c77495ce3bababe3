#include "dga/builder.hpp"

#include "dga/error.hpp"

namespace dga {

Condition occurrence_sets_condition(const std::vector<StateSet>& sets, const StateSet& permanent) {
  std::vector<Condition> alternatives;
  for (const auto& s : sets) {
    std::vector<Condition> parts;
    s.for_each([&](StateId q) { parts.push_back(Condition::contains(0, q)); });
    parts.push_back(!Condition::meets(0, permanent - s));
    alternatives.push_back(Condition::all_of(std::move(parts)));
  }
  return Condition::any_of(std::move(alternatives));
}

std::vector<StateSet> accepting_sets(const Adga& a, std::size_t max_permanent) {
  const auto perm = a.permanent_states().members();
  if (perm.size() > max_permanent)
    throw Error("cannot list accepting sets over " + std::to_string(perm.size()) + " permanent states");
  std::vector<StateSet> out;
  const std::uint64_t limit = std::uint64_t{1} << perm.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    StateSet s;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if ((mask >> i) & 1U) s.insert(perm[i]);
    if (a.acceptance().eval_occurrence(s)) out.push_back(std::move(s));
  }
  return out;
}

SpecBuilder::SpecBuilder(Alphabets alphabets) {
  spec_.alphabets = std::move(alphabets);
  spec_.init.assign(spec_.alphabets.nodes.size(), 0);
}

StateId SpecBuilder::state(std::string name, StateKind kind) {
  const auto q = static_cast<StateId>(spec_.states.size());
  if (!ids_.emplace(name, q).second) throw Error("state '" + name + "' declared twice");
  spec_.states.push_back({std::move(name), kind, 0});
  return q;
}

StateId SpecBuilder::id(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) throw Error("unknown state '" + std::string(name) + "'");
  return it->second;
}

void SpecBuilder::init(SymbolId label, StateId q) { spec_.init.at(label) = q; }

void SpecBuilder::rule(StateId source, Condition guard, std::vector<StateId> targets) {
  spec_.rules.push_back({source, std::move(guard), std::move(targets)});
}

void SpecBuilder::accept_sets(const std::vector<std::vector<StateId>>& sets) {
  StateSet perm;
  for (StateId q = 0; q < spec_.states.size(); ++q)
    if (spec_.states[q].kind == StateKind::permanent) perm.insert(q);
  std::vector<StateSet> s;
  for (const auto& v : sets) s.push_back(StateSet::of(v));
  spec_.acceptance = occurrence_sets_condition(s, perm);
}

}  // namespace dga
