#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dga/condition.hpp"
#include "dga/graph.hpp"
#include "dga/state_set.hpp"

namespace dga {

enum class StateKind { existential, universal, permanent };

char kind_letter(StateKind k);

struct StateDecl {
  std::string name;
  StateKind kind = StateKind::existential;
  int level = 0;  // computed by validation
};

/// Guarded rule: from `source`, if the received family satisfies `guard`,
/// every state in `targets` is a possible successor. The local transition
/// function is the union over all satisfied rules of the source.
struct TransitionRule {
  StateId source = 0;
  Condition guard;
  std::vector<StateId> targets;
};

/// Raw automaton description, before level assignment and checks.
struct AdgaSpec {
  Alphabets alphabets;
  std::vector<StateDecl> states;
  std::vector<StateId> init;  // indexed by node label
  std::vector<TransitionRule> rules;
  /// Acceptance condition over the occurrence set of a permanent configuration.
  Condition acceptance = Condition::falsity();
};

struct ValidationResult;
enum class AutomatonClass { adga, ndga, ddga };

/// Alternating distributed graph automaton with its level map.
class Adga {
 public:
  /// Validates and throws dga::Error listing every violation.
  static Adga from_spec(AdgaSpec spec);

  const Alphabets& alphabets() const { return spec_.alphabets; }
  std::size_t state_count() const { return spec_.states.size(); }
  const StateDecl& state(StateId q) const { return spec_.states.at(q); }
  const std::vector<StateDecl>& states() const { return spec_.states; }
  StateKind kind(StateId q) const { return spec_.states[q].kind; }
  int level(StateId q) const { return spec_.states[q].level; }
  bool is_permanent(StateId q) const { return spec_.states[q].kind == StateKind::permanent; }
  std::optional<StateId> find_state(std::string_view name) const;

  StateId init(SymbolId label) const { return spec_.init.at(label); }
  const std::vector<StateId>& init_map() const { return spec_.init; }
  const std::vector<TransitionRule>& rules() const { return spec_.rules; }
  /// Indices into rules() with the given source.
  const std::vector<std::size_t>& rules_from(StateId q) const { return rules_by_source_[q]; }
  const Condition& acceptance() const { return spec_.acceptance; }

  /// Highest level.
  int length() const { return length_; }
  /// Kind shared by the nonpermanent states of `level` (existential if none).
  StateKind level_kind(int level) const;
  StateSet permanent_states() const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  const AdgaSpec& spec() const { return spec_; }

 private:
  friend ValidationResult validate(AdgaSpec spec);
  Adga() = default;

  AdgaSpec spec_;
  std::vector<std::vector<std::size_t>> rules_by_source_;
  std::vector<StateKind> level_kinds_;
  int length_ = 0;
  std::vector<std::string> warnings_;
  std::shared_ptr<std::atomic<int>> class_cache_ = std::make_shared<std::atomic<int>>(-1);

  friend AutomatonClass classify(const Adga& a);
};

struct ValidationResult {
  std::optional<Adga> automaton;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

/// Computes the unique level map and checks every structural condition.
ValidationResult validate(AdgaSpec spec);

/// Global state of a run: one automaton state per node of a fixed graph.
struct Configuration {
  std::vector<StateId> states;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Received family of node `v`: for every edge symbol, the states of its
/// incoming neighbors through that symbol.
std::vector<StateSet> received_family(const Graph& g, const Configuration& c, NodeId v);

/// δ(q, S): {q} for permanent q, otherwise the union of the targets of
/// every rule of q whose guard holds on S.
std::vector<StateId> local_successors(const Adga& a, StateId q, std::span<const StateSet> received);

/// δ^cloud: every combination of local successors; empty iff some node has none.
std::vector<Configuration> global_successors(const Adga& a, const Graph& g, const Configuration& c);

Configuration initial_configuration(const Adga& a, const LabeledGraph& g);

/// Permanent: every node in a permanent state.
bool is_permanent_configuration(const Adga& a, const Configuration& c);

/// Membership by memoized game evaluation: existential configurations need
/// one accepted successor (none: reject), universal ones need all (none:
/// accept), permanent ones accept iff their occurrence set is accepting.
bool accepts(const Adga& a, const LabeledGraph& g);

struct RunDag {
  std::vector<Configuration> nodes;          // nodes[0] is the initial configuration
  std::vector<std::vector<std::size_t>> successors;
  std::size_t root = 0;

  std::size_t size() const { return nodes.size(); }
};

/// An accepting run, when one exists. Existential configurations keep the
/// first winning successor; universal ones keep all successors.
std::optional<RunDag> witness_run(const Adga& a, const LabeledGraph& g);

std::string to_string(AutomatonClass c);

/// NDGA iff no universal states; DDGA iff additionally every nonpermanent
/// state's rules have single targets, guards with different targets never
/// overlap, and the guards cover every received family.
AutomatonClass classify(const Adga& a);
bool is_syntactically_deterministic(const Adga& a);

/// Per-graph check: every configuration reachable on g has exactly one successor.
bool is_deterministic_on(const Adga& a, const LabeledGraph& g);

/// Reroutes every uncovered guard region of a nonpermanent state into a
/// permanent dead state tagged with the state's level. A configuration's
/// outcome is then decided by the earliest dead state that occurs: dead
/// states of existential levels reject, of universal levels accept.
Adga totalize(const Adga& a);

/// Removes nonpermanent states that no chain of rules reaches from the
/// initial states. Permanent states are kept.
Adga trim(const Adga& a);

/// Equivalent automaton of length `length` in which permanent states are
/// only entered at the last level and every configuration has a successor.
/// Throws dga::Error if length < a.length().
Adga synchronize(const Adga& a, int length);

}  // namespace dga
