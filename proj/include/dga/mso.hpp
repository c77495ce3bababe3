#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dga/automaton.hpp"
#include "dga/graph.hpp"

namespace dga {

/// Immutable MSO formula over node variables (identifiers starting with a
/// lower-case letter) and set variables (upper-case).
class MsoFormula {
 public:
  enum class Op {
    constant,
    label,        // lab[a](x)
    edge,         // edge[g](x, y)
    equal,        // x = y
    member,       // x in X
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    exists,
    forall,
  };

  struct Node {
    Op op = Op::constant;
    bool value = false;
    SymbolId symbol = 0;
    std::vector<std::string> vars;  // atom arguments or the bound variable
    std::vector<MsoFormula> children;
    std::set<std::string> free;
  };

  MsoFormula() : MsoFormula(true) {}

  static MsoFormula constant(bool value) { return MsoFormula(value); }
  static MsoFormula label(SymbolId a, std::string x);
  static MsoFormula edge(SymbolId g, std::string x, std::string y);
  static MsoFormula equal(std::string x, std::string y);
  static MsoFormula member(std::string x, std::string set);
  static MsoFormula implies(MsoFormula a, MsoFormula b);
  static MsoFormula iff(MsoFormula a, MsoFormula b);
  static MsoFormula exists(std::string var, MsoFormula body);
  static MsoFormula forall(std::string var, MsoFormula body);
  /// Conjunction or disjunction of any number of parts; the empty one is a constant.
  static MsoFormula all_of(std::vector<MsoFormula> parts);
  static MsoFormula any_of(std::vector<MsoFormula> parts);

  friend MsoFormula operator!(const MsoFormula& a);
  friend MsoFormula operator&&(const MsoFormula& a, const MsoFormula& b) { return all_of({a, b}); }
  friend MsoFormula operator||(const MsoFormula& a, const MsoFormula& b) { return any_of({a, b}); }

  const Node& node() const { return *node_; }
  Op op() const { return node_->op; }
  const std::set<std::string>& free_variables() const { return node_->free; }
  bool is_sentence() const { return node_->free.empty(); }
  /// Maximal nesting of quantifiers.
  int quantifier_depth() const;
  std::size_t size() const;

  /// Rewrites ->, <-> and ALL into !, |, & and EX.
  MsoFormula desugared() const;

  friend bool operator==(const MsoFormula& a, const MsoFormula& b);

 private:
  explicit MsoFormula(bool value);
  explicit MsoFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static MsoFormula make(Node n);

  std::shared_ptr<const Node> node_;
};

bool is_node_variable(std::string_view name);
bool is_set_variable(std::string_view name);

/// Parses the formula grammar: `EX`/`ALL` quantifiers over one or more
/// variables followed by `.`, atoms `lab[a](x)`, `edge[g](x,y)`, `x = y`,
/// `x in X`, `true`, `false`, connectives `!`, `&`, `|`, `->` (right
/// associative), `<->`, and parentheses. Errors carry line and column.
MsoFormula parse_mso(std::string_view text, const Alphabets& alphabets, std::string_view source = {});

std::string to_text(const MsoFormula& f, const Alphabets& alphabets);

/// Formula file: `mso`, `node_alphabet ...`, `edge_alphabet ...` (default
/// blank), then `formula` followed by the formula text, which may span the
/// remaining lines.
std::pair<MsoFormula, Alphabets> parse_mso_file(std::string_view text, std::string_view source = {});
std::string format_mso_file(const MsoFormula& f, const Alphabets& alphabets);

/// Values of free variables: node variables map to nodes, set variables to node sets.
struct Assignment {
  std::map<std::string, NodeId> nodes;
  std::map<std::string, std::set<NodeId>> sets;
};

/// Brute-force model checking. Set quantifiers enumerate all 2^n subsets.
/// Throws DomainError if the assignment's domain differs from free(f), or if
/// the graph has more than 63 nodes.
bool eval_mso(const MsoFormula& f, const LabeledGraph& g, const Assignment& alpha = {});

/// Node alphabet Σ × 2^V for an ordered variable list V. The symbol for base
/// label a and variable subset S is `a` followed by `+v` for each v in S, in
/// V's order; its id is base * 2^|V| + mask, with bit i standing for V[i].
class AnnotatedAlphabet {
 public:
  AnnotatedAlphabet(SymbolSet base, std::vector<std::string> vars);

  const SymbolSet& base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const SymbolSet& symbols() const { return symbols_; }
  SymbolId encode(SymbolId base_label, std::uint32_t mask) const { return base_label * (1u << vars_.size()) + mask; }
  SymbolId base_of(SymbolId s) const { return s >> vars_.size(); }
  std::uint32_t mask_of(SymbolId s) const { return s & ((1u << vars_.size()) - 1); }
  /// Bit of variable `v`; throws DomainError if absent.
  std::uint32_t bit(std::string_view v) const;

 private:
  SymbolSet base_;
  std::vector<std::string> vars_;
  SymbolSet symbols_;
};

/// G_{λ×α⁻¹}: each node's label annotated with the variables of `vars` it is assigned to.
LabeledGraph annotate(const LabeledGraph& g, const AnnotatedAlphabet& sigma, const Assignment& alpha);

/// Accepts an annotated graph iff exactly one node carries `x`. Marked nodes
/// split universally into two markers, and an occurrence set is accepting
/// iff exactly one of the markers occurs.
Adga exactly_one(const AnnotatedAlphabet& sigma, std::string_view x,
                 const SymbolSet& edges = SymbolSet({"blank"}));

/// Automaton over AnnotatedAlphabet(alphabets.nodes, sorted free(f)) such
/// that G_{λ×α⁻¹} is accepted iff (G_λ, α) satisfies f. Sentences yield
/// automata over the plain node alphabet. The state count grows
/// exponentially with every nested negation and quantifier.
Adga compile_mso(const MsoFormula& f, const Alphabets& alphabets);

/// Sentence stating that the automaton has a winning strategy. Per level i
/// the formula quantifies one set U<i>_<q> for each state q of level i,
/// existentially for existential levels and universally (under an
/// implication) for universal ones, asserting that the sets partition the
/// nodes and that every node's next state is a legal local successor.
/// Level-0 membership is read off the labels. The automaton is synchronized
/// and totalized first.
MsoFormula mso_of_adga(const Adga& a);

}  // namespace dga
