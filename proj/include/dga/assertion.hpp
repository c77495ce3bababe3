#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dga/automaton.hpp"
#include "dga/graph.hpp"

namespace dga {

/// Ordered finite set of nonnegative integers containing 0.
class Domain {
 public:
  /// Throws DomainError unless the values are distinct, nonnegative and include 0.
  explicit Domain(std::vector<int> values);
  static Domain range(int lo, int hi);

  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int min() const { return values_.front(); }
  int max() const { return values_.back(); }
  bool contains(int v) const;
  std::size_t index(int v) const;
  /// Clamps to [min, max], then rounds down to the nearest member.
  int saturate(long long v) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<int> values_;
};

/// Values of the member variables at one node.
using Valuation = std::vector<int>;

/// The global-state node alphabet Val^Var. Symbols are named
/// `x1=v1,x2=v2,...`; ids enumerate valuations with the first variable
/// most significant.
class ValuationSpace {
 public:
  ValuationSpace(Domain domain, std::vector<std::string> vars);

  const Domain& domain() const { return domain_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::optional<std::size_t> var_index(std::string_view name) const;
  std::size_t size() const { return size_; }
  const SymbolSet& symbols() const { return symbols_; }
  SymbolId encode(const Valuation& v) const;
  Valuation decode(SymbolId s) const;

  friend bool operator==(const ValuationSpace& a, const ValuationSpace& b) {
    return a.domain_ == b.domain_ && a.vars_ == b.vars_;
  }

 private:
  Domain domain_;
  std::vector<std::string> vars_;
  std::size_t size_ = 1;
  SymbolSet symbols_;
};

/// Integer expression over member variables of up to two bound nodes and,
/// inside a round with a message exchange, the received message set.
struct Expr {
  enum class Op { constant, variable, add, sub, max, min };
  Op op = Op::constant;
  int value = 0;          // constant
  int node = 0;           // variable: index of the binder
  std::size_t var = 0;    // variable
  bool messages = false;  // max/min also range over the message set
  std::vector<Expr> args;

  static Expr constant(int v);
  static Expr variable(int node, std::size_t var);
};

struct BoolExpr {
  enum class Op { constant, compare, negation, conjunction, disjunction };
  enum class Cmp { eq, ne, lt, le, gt, ge };
  Op op = Op::constant;
  bool value = true;
  Cmp cmp = Cmp::eq;
  std::vector<Expr> sides;  // compare: lhs, rhs
  std::vector<BoolExpr> kids;

  static BoolExpr compare(Expr lhs, Cmp cmp, Expr rhs);
};

/// Evaluation context: the valuations of the bound nodes and the message set.
struct ExprEnv {
  const ValuationSpace* space = nullptr;
  std::vector<const Valuation*> nodes;
  const std::vector<int>* messages = nullptr;
};

/// Saturating evaluation; max over an empty set is the domain minimum and
/// min over an empty set the domain maximum.
int eval_expr(const Expr& e, const ExprEnv& env);
bool eval_bool(const BoolExpr& b, const ExprEnv& env);

/// Boolean combination of node and edge quantifiers. `all v: p` and
/// `some v: p` quantify over nodes; `alledges u v: q` ranges over directed
/// edges u -> v of any symbol, with u the sender and v the receiver.
struct Assertion {
  enum class Op { constant, node_all, node_some, edge_all, negation, conjunction, disjunction };
  Op op = Op::constant;
  bool value = true;
  std::vector<std::string> binders;
  BoolExpr pred;
  std::vector<Assertion> kids;

  static Assertion constant(bool v);
  static Assertion node_all(std::string v, BoolExpr p);
  static Assertion node_some(std::string v, BoolExpr p);
  static Assertion edge_all(std::string u, std::string v, BoolExpr p);
  friend Assertion operator!(Assertion a);
  friend Assertion operator&&(Assertion a, Assertion b);
  friend Assertion operator||(Assertion a, Assertion b);
};

/// Parses `all v: p`, `some v: p`, `alledges u v: q`, `true`, `false`,
/// combined with `and`, `or`, `not` and parentheses. A predicate after `:`
/// is a comparison, `not` predicate, or a parenthesized predicate, so
/// top-level `and`/`or` always combine assertions.
Assertion parse_assertion(std::string_view text, const ValuationSpace& space, std::string_view source = {});
std::string to_text(const Assertion& a, const ValuationSpace& space);

/// Reference semantics by direct evaluation on the labeled graph.
bool eval_assertion(const Assertion& a, const ValuationSpace& space, const LabeledGraph& g);

/// Syntactic DDGA over Val^Var. Node quantifiers have length 0; the edge
/// quantifier has length 1, with one level-0 state per valuation. Negation
/// flips the acceptance condition and conjunction and disjunction use the
/// synchronized product.
Adga compile_assertion(const Assertion& a, const ValuationSpace& space,
                       const SymbolSet& edges = SymbolSet({"blank"}));

}  // namespace dga
