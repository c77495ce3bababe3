#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dga/assertion.hpp"
#include "dga/automaton.hpp"
#include "dga/graph.hpp"

namespace dga {

struct LocalCommand {
  enum class Op { skip, assign, conditional };
  Op op = Op::skip;
  std::size_t var = 0;  // assign
  Expr value;           // assign
  BoolExpr condition;   // conditional
  std::vector<LocalCommand> then_branch;
  std::vector<LocalCommand> else_branch;
};

/// Commands every node runs in one synchronous round, optionally preceded
/// by sending one member variable to all out-neighbors and receiving the
/// set of values sent by in-neighbors.
struct LocalBlock {
  std::string binder = "v";
  std::optional<std::size_t> send;
  std::string messages;  // name of the received set when `send` is present
  std::vector<LocalCommand> commands;
};

struct GlobalItem {
  enum class Kind { round, check, loop };
  Kind kind = Kind::round;
  LocalBlock block;       // round
  Assertion assertion;    // check; loop condition
  Assertion invariant;    // loop
  std::vector<GlobalItem> body;  // loop
  std::size_t line = 0;
};

struct DplProgram {
  std::string name;
  ValuationSpace space{Domain({0}), {}};
  Assertion pre;
  std::vector<GlobalItem> items;
  Assertion post;
  std::size_t pre_line = 0;
  std::size_t post_line = 0;
};

/// Program text:
///   program <name>
///   domain <v0> <v1> ...
///   vars <x1> <x2> ...
///   require { <assertion> }
///   each v { [send v.<x> receive M;] <commands> }
///   assert { <assertion> }
///   while <assertion> invariant { <assertion> } { <global commands> }
///   ensure { <assertion> }
/// Commands: `skip;`, `v.<x> := <expr>;`, `if <pred> then { ... } [else { ... }]`.
DplProgram parse_dpl(std::string_view text, std::string_view source = {});
std::string format_dpl(const DplProgram& p);

/// Runs the commands of a block at one node. `messages` is the received set.
Valuation run_block(const LocalBlock& block, const ValuationSpace& space, const Valuation& own,
                    const std::vector<int>& messages);

/// One synchronous round: all messages are taken from the pre-round state,
/// each node receiving the sent values of its in-neighbors over every edge
/// symbol, then every node runs the block.
LabeledGraph step_round(const LocalBlock& block, const ValuationSpace& space, const LabeledGraph& g);

struct RunOutcome {
  LabeledGraph state;
  bool completed = false;  // false when the fuel ran out inside a loop
  std::size_t rounds = 0;
  std::size_t iterations = 0;
};

/// Executes the program. Loop conditions are decided by running the
/// compiled assertion automaton on the current global state. Every loop
/// iteration consumes one unit of fuel.
RunOutcome run_program(const DplProgram& p, const LabeledGraph& g, std::size_t fuel);

/// DDGA accepting G iff `a` accepts step_round(block, G). A new first level
/// has one state per valuation; its rules recover the received value set
/// from the neighbors' valuation states, run the block, and enter the
/// initial state `a` assigns to the resulting valuation.
Adga wp_round(const LocalBlock& block, const ValuationSpace& space, const Adga& a);

}  // namespace dga
