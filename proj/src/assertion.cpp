#include "dga/assertion.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dga/builder.hpp"
#include "dga/constructions.hpp"
#include "dga/error.hpp"
#include "dpl_reader.hpp"

namespace dga {

// ---------------------------------------------------------------------------
// Domains and valuations

Domain::Domain(std::vector<int> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  if (values_.empty()) throw DomainError("empty domain");
  if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) throw DomainError("duplicate domain value");
  if (values_.front() < 0) throw DomainError("domain values must be nonnegative");
  if (values_.front() != 0) throw DomainError("domain must contain 0");
}

Domain Domain::range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return Domain(std::move(v));
}

bool Domain::contains(int v) const { return std::binary_search(values_.begin(), values_.end(), v); }

std::size_t Domain::index(int v) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) throw DomainError("value " + std::to_string(v) + " is outside the domain");
  return static_cast<std::size_t>(it - values_.begin());
}

int Domain::saturate(long long v) const {
  if (v <= min()) return min();
  if (v >= max()) return max();
  return *(std::upper_bound(values_.begin(), values_.end(), static_cast<int>(v)) - 1);
}

namespace {

SymbolSet valuation_symbols(const Domain& d, const std::vector<std::string>& vars, std::size_t size) {
  std::vector<std::string> names;
  names.reserve(size);
  for (std::size_t id = 0; id < size; ++id) {
    std::string s;
    std::size_t rest = id;
    std::vector<int> vals(vars.size());
    for (std::size_t i = vars.size(); i-- > 0;) {
      vals[i] = d.values()[rest % d.size()];
      rest /= d.size();
    }
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i] + "=" + std::to_string(vals[i]);
    names.push_back(vars.empty() ? std::string("unit") : s);
  }
  return SymbolSet(std::move(names));
}

}  // namespace

ValuationSpace::ValuationSpace(Domain domain, std::vector<std::string> vars)
    : domain_(std::move(domain)), vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == "M") throw DomainError("'M' is reserved for the message set");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) throw DomainError("duplicate variable '" + vars_[i] + "'");
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    size_ *= domain_.size();
    if (size_ > 65536) throw DomainError("too many valuations");
  }
  symbols_ = valuation_symbols(domain_, vars_, size_);
}

std::optional<std::size_t> ValuationSpace::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

SymbolId ValuationSpace::encode(const Valuation& v) const {
  if (v.size() != vars_.size()) throw DomainError("valuation has the wrong number of variables");
  std::size_t id = 0;
  for (int x : v) id = id * domain_.size() + domain_.index(x);
  return static_cast<SymbolId>(id);
}

Valuation ValuationSpace::decode(SymbolId s) const {
  Valuation v(vars_.size());
  std::size_t rest = s;
  for (std::size_t i = vars_.size(); i-- > 0;) {
    v[i] = domain_.values()[rest % domain_.size()];
    rest /= domain_.size();
  }
  return v;
}

// ---------------------------------------------------------------------------
// Expressions

Expr Expr::constant(int v) {
  Expr e;
  e.value = v;
  return e;
}

Expr Expr::variable(int node, std::size_t var) {
  Expr e;
  e.op = Op::variable;
  e.node = node;
  e.var = var;
  return e;
}

BoolExpr BoolExpr::compare(Expr lhs, Cmp cmp, Expr rhs) {
  BoolExpr b;
  b.op = Op::compare;
  b.cmp = cmp;
  b.sides = {std::move(lhs), std::move(rhs)};
  return b;
}

int eval_expr(const Expr& e, const ExprEnv& env) {
  const Domain& d = env.space->domain();
  switch (e.op) {
    case Expr::Op::constant:
      return e.value;
    case Expr::Op::variable:
      return (*env.nodes.at(static_cast<std::size_t>(e.node)))[e.var];
    case Expr::Op::add:
      return d.saturate(static_cast<long long>(eval_expr(e.args[0], env)) + eval_expr(e.args[1], env));
    case Expr::Op::sub:
      return d.saturate(static_cast<long long>(eval_expr(e.args[0], env)) - eval_expr(e.args[1], env));
    case Expr::Op::max:
    case Expr::Op::min: {
      const bool mx = e.op == Expr::Op::max;
      std::optional<int> best;
      auto take = [&](int v) { best = !best ? v : (mx ? std::max(*best, v) : std::min(*best, v)); };
      if (e.messages && env.messages)
        for (int v : *env.messages) take(v);
      for (const auto& a : e.args) take(eval_expr(a, env));
      return best ? *best : (mx ? d.min() : d.max());
    }
  }
  return 0;
}

bool eval_bool(const BoolExpr& b, const ExprEnv& env) {
  switch (b.op) {
    case BoolExpr::Op::constant:
      return b.value;
    case BoolExpr::Op::compare: {
      const int x = eval_expr(b.sides[0], env);
      const int y = eval_expr(b.sides[1], env);
      switch (b.cmp) {
        case BoolExpr::Cmp::eq: return x == y;
        case BoolExpr::Cmp::ne: return x != y;
        case BoolExpr::Cmp::lt: return x < y;
        case BoolExpr::Cmp::le: return x <= y;
        case BoolExpr::Cmp::gt: return x > y;
        case BoolExpr::Cmp::ge: return x >= y;
      }
      return false;
    }
    case BoolExpr::Op::negation:
      return !eval_bool(b.kids[0], env);
    case BoolExpr::Op::conjunction:
      return std::all_of(b.kids.begin(), b.kids.end(), [&](const BoolExpr& k) { return eval_bool(k, env); });
    case BoolExpr::Op::disjunction:
      return std::any_of(b.kids.begin(), b.kids.end(), [&](const BoolExpr& k) { return eval_bool(k, env); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// Assertions

Assertion Assertion::constant(bool v) {
  Assertion a;
  a.value = v;
  return a;
}

Assertion Assertion::node_all(std::string v, BoolExpr p) {
  Assertion a;
  a.op = Op::node_all;
  a.binders = {std::move(v)};
  a.pred = std::move(p);
  return a;
}

Assertion Assertion::node_some(std::string v, BoolExpr p) {
  Assertion a = node_all(std::move(v), std::move(p));
  a.op = Op::node_some;
  return a;
}

Assertion Assertion::edge_all(std::string u, std::string v, BoolExpr p) {
  Assertion a;
  a.op = Op::edge_all;
  a.binders = {std::move(u), std::move(v)};
  a.pred = std::move(p);
  return a;
}

Assertion operator!(Assertion a) {
  if (a.op == Assertion::Op::constant) return Assertion::constant(!a.value);
  Assertion n;
  n.op = Assertion::Op::negation;
  n.kids.push_back(std::move(a));
  return n;
}

namespace {

Assertion junction(Assertion::Op op, Assertion a, Assertion b) {
  Assertion n;
  n.op = op;
  for (Assertion* x : {&a, &b}) {
    if (x->op == op) {
      for (auto& k : x->kids) n.kids.push_back(std::move(k));
    } else {
      n.kids.push_back(std::move(*x));
    }
  }
  return n;
}

}  // namespace

Assertion operator&&(Assertion a, Assertion b) {
  return junction(Assertion::Op::conjunction, std::move(a), std::move(b));
}

Assertion operator||(Assertion a, Assertion b) {
  return junction(Assertion::Op::disjunction, std::move(a), std::move(b));
}

Assertion parse_assertion(std::string_view text, const ValuationSpace& space, std::string_view source) {
  detail::Reader r(detail::lex_program(text, std::string(source)), space, std::string(source));
  Assertion a = r.assertion();
  if (!r.at_end()) r.fail("unexpected '" + r.peek().text + "'");
  return a;
}

namespace detail {

std::string expr_text(const Expr& e, const ValuationSpace& space, const Scope& scope, int parent) {
  switch (e.op) {
    case Expr::Op::constant:
      return std::to_string(e.value);
    case Expr::Op::variable:
      return scope.binders.at(static_cast<std::size_t>(e.node)) + "." + space.vars()[e.var];
    case Expr::Op::add:
    case Expr::Op::sub: {
      std::string s = expr_text(e.args[0], space, scope, 1) + (e.op == Expr::Op::add ? " + " : " - ") +
                      expr_text(e.args[1], space, scope, 2);
      return parent > 1 ? "(" + s + ")" : s;
    }
    case Expr::Op::max:
    case Expr::Op::min: {
      std::string s = e.op == Expr::Op::max ? "max(" : "min(";
      if (e.messages) {
        s += scope.messages;
        if (!e.args.empty()) {
          s += " + {";
          for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + expr_text(e.args[i], space, scope);
          s += "}";
        }
      } else {
        for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + expr_text(e.args[i], space, scope);
      }
      return s + ")";
    }
  }
  return "?";
}

std::string bool_text(const BoolExpr& b, const ValuationSpace& space, const Scope& scope, int parent) {
  switch (b.op) {
    case BoolExpr::Op::constant:
      return b.value ? "true" : "false";
    case BoolExpr::Op::compare: {
      static const char* const ops[] = {"==", "!=", "<", "<=", ">", ">="};
      return expr_text(b.sides[0], space, scope) + " " + ops[static_cast<int>(b.cmp)] + " " +
             expr_text(b.sides[1], space, scope);
    }
    case BoolExpr::Op::negation:
      return "not " + bool_text(b.kids[0], space, scope, 2);
    case BoolExpr::Op::conjunction:
    case BoolExpr::Op::disjunction: {
      const bool conj = b.op == BoolExpr::Op::conjunction;
      std::string s;
      for (std::size_t i = 0; i < b.kids.size(); ++i)
        s += (i ? (conj ? " and " : " or ") : "") + bool_text(b.kids[i], space, scope, conj ? 2 : 1);
      return parent > (conj ? 1 : 0) ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace detail

namespace {

std::string assertion_text(const Assertion& a, const ValuationSpace& space, int parent) {
  switch (a.op) {
    case Assertion::Op::constant:
      return a.value ? "true" : "false";
    case Assertion::Op::node_all:
    case Assertion::Op::node_some:
    case Assertion::Op::edge_all: {
      const detail::Scope scope{a.binders, {}};
      std::string head = a.op == Assertion::Op::node_all    ? "all " + a.binders[0]
                         : a.op == Assertion::Op::node_some ? "some " + a.binders[0]
                                                            : "alledges " + a.binders[0] + " " + a.binders[1];
      return head + ": " + detail::bool_text(a.pred, space, scope, 2);
    }
    case Assertion::Op::negation:
      return "not " + assertion_text(a.kids[0], space, 2);
    case Assertion::Op::conjunction:
    case Assertion::Op::disjunction: {
      const bool conj = a.op == Assertion::Op::conjunction;
      std::string s;
      for (std::size_t i = 0; i < a.kids.size(); ++i)
        s += (i ? (conj ? " and " : " or ") : "") + assertion_text(a.kids[i], space, conj ? 2 : 1);
      return parent > (conj ? 1 : 0) ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string to_text(const Assertion& a, const ValuationSpace& space) { return assertion_text(a, space, 0); }

bool eval_assertion(const Assertion& a, const ValuationSpace& space, const LabeledGraph& g) {
  switch (a.op) {
    case Assertion::Op::constant:
      return a.value;
    case Assertion::Op::node_all:
    case Assertion::Op::node_some: {
      const bool all = a.op == Assertion::Op::node_all;
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const Valuation val = space.decode(g.labels[v]);
        const bool holds = eval_bool(a.pred, {&space, {&val}, nullptr});
        if (holds != all) return !all;
      }
      return all;
    }
    case Assertion::Op::edge_all:
      for (const auto& e : g.graph.edges()) {
        const Valuation u = space.decode(g.labels[e.from]);
        const Valuation v = space.decode(g.labels[e.to]);
        if (!eval_bool(a.pred, {&space, {&u, &v}, nullptr})) return false;
      }
      return true;
    case Assertion::Op::negation:
      return !eval_assertion(a.kids[0], space, g);
    case Assertion::Op::conjunction:
      for (const auto& k : a.kids)
        if (!eval_assertion(k, space, g)) return false;
      return true;
    case Assertion::Op::disjunction:
      for (const auto& k : a.kids)
        if (eval_assertion(k, space, g)) return true;
      return false;
  }
  return false;
}

Adga compile_assertion(const Assertion& a, const ValuationSpace& space, const SymbolSet& edges) {
  const Alphabets alpha{space.symbols(), edges};
  switch (a.op) {
    case Assertion::Op::constant: {
      SpecBuilder b(alpha);
      const StateId p = b.state(a.value ? "yes" : "no", StateKind::permanent);
      for (SymbolId s = 0; s < space.size(); ++s) b.init(s, p);
      b.acceptance(Condition(a.value));
      return b.build();
    }
    case Assertion::Op::node_all:
    case Assertion::Op::node_some: {
      SpecBuilder b(alpha);
      const StateId yes = b.state("yes", StateKind::permanent);
      const StateId no = b.state("no", StateKind::permanent);
      for (SymbolId s = 0; s < space.size(); ++s) {
        const Valuation val = space.decode(s);
        b.init(s, eval_bool(a.pred, {&space, {&val}, nullptr}) ? yes : no);
      }
      b.acceptance(a.op == Assertion::Op::node_all ? !Condition::contains(0, no) : Condition::contains(0, yes));
      return b.build();
    }
    case Assertion::Op::edge_all: {
      SpecBuilder b(alpha);
      std::vector<StateId> own;
      for (SymbolId s = 0; s < space.size(); ++s) {
        own.push_back(b.state(space.symbols().name(s), StateKind::existential));
        b.init(s, own.back());
      }
      const StateId yes = b.state("yes", StateKind::permanent);
      const StateId no = b.state("no", StateKind::permanent);
      std::vector<Valuation> vals;
      for (SymbolId s = 0; s < space.size(); ++s) vals.push_back(space.decode(s));
      for (SymbolId r = 0; r < space.size(); ++r) {
        StateSet bad;
        for (SymbolId s = 0; s < space.size(); ++s)
          if (!eval_bool(a.pred, {&space, {&vals[s], &vals[r]}, nullptr})) bad.insert(own[s]);
        if (bad.empty()) {
          b.rule(own[r], Condition::truth(), {yes});
        } else {
          const Condition heard = Condition::meets(Condition::any_channel, bad);
          b.rule(own[r], heard, {no});
          b.rule(own[r], !heard, {yes});
        }
      }
      b.acceptance(!Condition::contains(0, no));
      return b.build();
    }
    case Assertion::Op::negation:
      return complement(compile_assertion(a.kids[0], space, edges));
    case Assertion::Op::conjunction:
    case Assertion::Op::disjunction: {
      const Combine c = a.op == Assertion::Op::conjunction ? Combine::conjunction : Combine::disjunction;
      Adga acc = compile_assertion(a.kids[0], space, edges);
      for (std::size_t i = 1; i < a.kids.size(); ++i) acc = product(acc, compile_assertion(a.kids[i], space, edges), c);
      return acc;
    }
  }
  throw Error("compile_assertion: unknown assertion");
}

}  // namespace dga
