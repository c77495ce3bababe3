#include "dga/mso.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "dga/builder.hpp"
#include "dga/constructions.hpp"
#include "dga/error.hpp"
#include "text_util.hpp"

namespace dga {

// ---------------------------------------------------------------------------
// Formula construction

bool is_node_variable(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name.front())) != 0;
}

bool is_set_variable(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name.front())) != 0;
}

MsoFormula::MsoFormula(bool value) {
  Node n;
  n.value = value;
  node_ = std::make_shared<const Node>(std::move(n));
}

MsoFormula MsoFormula::make(Node n) {
  n.free.clear();
  switch (n.op) {
    case Op::constant:
      break;
    case Op::label:
    case Op::edge:
    case Op::equal:
    case Op::member:
      n.free.insert(n.vars.begin(), n.vars.end());
      break;
    case Op::exists:
    case Op::forall:
      n.free = n.children.front().free_variables();
      n.free.erase(n.vars.front());
      break;
    default:
      for (const auto& c : n.children) n.free.insert(c.free_variables().begin(), c.free_variables().end());
  }
  return MsoFormula(std::make_shared<const Node>(std::move(n)));
}

MsoFormula MsoFormula::label(SymbolId a, std::string x) {
  if (!is_node_variable(x)) throw DomainError("lab expects a node variable, got '" + x + "'");
  Node n;
  n.op = Op::label;
  n.symbol = a;
  n.vars = {std::move(x)};
  return make(std::move(n));
}

MsoFormula MsoFormula::edge(SymbolId g, std::string x, std::string y) {
  if (!is_node_variable(x) || !is_node_variable(y)) throw DomainError("edge expects node variables");
  Node n;
  n.op = Op::edge;
  n.symbol = g;
  n.vars = {std::move(x), std::move(y)};
  return make(std::move(n));
}

MsoFormula MsoFormula::equal(std::string x, std::string y) {
  if (!is_node_variable(x) || !is_node_variable(y)) throw DomainError("= expects node variables");
  Node n;
  n.op = Op::equal;
  n.vars = {std::move(x), std::move(y)};
  return make(std::move(n));
}

MsoFormula MsoFormula::member(std::string x, std::string set) {
  if (!is_node_variable(x)) throw DomainError("'in' expects a node variable on the left, got '" + x + "'");
  if (!is_set_variable(set)) throw DomainError("'in' expects a set variable on the right, got '" + set + "'");
  Node n;
  n.op = Op::member;
  n.vars = {std::move(x), std::move(set)};
  return make(std::move(n));
}

MsoFormula operator!(const MsoFormula& a) {
  if (a.op() == MsoFormula::Op::constant) return MsoFormula::constant(!a.node().value);
  MsoFormula::Node n;
  n.op = MsoFormula::Op::negation;
  n.children = {a};
  return MsoFormula::make(std::move(n));
}

MsoFormula MsoFormula::implies(MsoFormula a, MsoFormula b) {
  Node n;
  n.op = Op::implication;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

MsoFormula MsoFormula::iff(MsoFormula a, MsoFormula b) {
  Node n;
  n.op = Op::equivalence;
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

namespace {

MsoFormula quantifier(MsoFormula::Op op, std::string var, MsoFormula body,
                      MsoFormula (*make)(MsoFormula::Node)) {
  if (!is_node_variable(var) && !is_set_variable(var))
    throw DomainError("variables start with a letter, got '" + var + "'");
  MsoFormula::Node n;
  n.op = op;
  n.vars = {std::move(var)};
  n.children = {std::move(body)};
  return make(std::move(n));
}

}  // namespace

MsoFormula MsoFormula::exists(std::string var, MsoFormula body) {
  return quantifier(Op::exists, std::move(var), std::move(body), &MsoFormula::make);
}

MsoFormula MsoFormula::forall(std::string var, MsoFormula body) {
  return quantifier(Op::forall, std::move(var), std::move(body), &MsoFormula::make);
}

namespace {

MsoFormula junction(MsoFormula::Op op, std::vector<MsoFormula> parts, MsoFormula (*make)(MsoFormula::Node)) {
  const bool unit = op == MsoFormula::Op::conjunction;
  std::vector<MsoFormula> flat;
  for (auto& p : parts) {
    if (p.op() == MsoFormula::Op::constant) {
      if (p.node().value == unit) continue;
      return MsoFormula::constant(!unit);
    }
    if (p.op() == op) {
      for (const auto& c : p.node().children) flat.push_back(c);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return MsoFormula::constant(unit);
  if (flat.size() == 1) return flat.front();
  MsoFormula::Node n;
  n.op = op;
  n.children = std::move(flat);
  return make(std::move(n));
}

}  // namespace

MsoFormula MsoFormula::all_of(std::vector<MsoFormula> parts) {
  return junction(Op::conjunction, std::move(parts), &MsoFormula::make);
}

MsoFormula MsoFormula::any_of(std::vector<MsoFormula> parts) {
  return junction(Op::disjunction, std::move(parts), &MsoFormula::make);
}

int MsoFormula::quantifier_depth() const {
  int d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.quantifier_depth());
  return d + ((op() == Op::exists || op() == Op::forall) ? 1 : 0);
}

std::size_t MsoFormula::size() const {
  std::size_t s = 1;
  for (const auto& c : node_->children) s += c.size();
  return s;
}

MsoFormula MsoFormula::desugared() const {
  const auto& n = *node_;
  auto kid = [&](std::size_t i) { return n.children[i].desugared(); };
  switch (n.op) {
    case Op::negation:
      return !kid(0);
    case Op::conjunction:
    case Op::disjunction: {
      std::vector<MsoFormula> parts;
      for (std::size_t i = 0; i < n.children.size(); ++i) parts.push_back(kid(i));
      return n.op == Op::conjunction ? all_of(std::move(parts)) : any_of(std::move(parts));
    }
    case Op::implication:
      return !kid(0) || kid(1);
    case Op::equivalence: {
      const MsoFormula a = kid(0);
      const MsoFormula b = kid(1);
      return (a && b) || (!a && !b);
    }
    case Op::exists:
      return exists(n.vars.front(), kid(0));
    case Op::forall:
      return !exists(n.vars.front(), !kid(0));
    default:
      return *this;
  }
}

bool operator==(const MsoFormula& a, const MsoFormula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.op != y.op || x.vars != y.vars || x.children.size() != y.children.size()) return false;
  if (x.op == MsoFormula::Op::constant && x.value != y.value) return false;
  if ((x.op == MsoFormula::Op::label || x.op == MsoFormula::Op::edge) && x.symbol != y.symbol) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class MsoParser {
 public:
  MsoParser(std::string_view text, const Alphabets& alphabets, std::string source, std::size_t first_line)
      : text_(text), alphabets_(alphabets), source_(std::move(source)), first_line_(first_line) {}

  MsoFormula parse() {
    MsoFormula f = equivalence();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_, 16)) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = first_line_;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source_, line, "column " + std::to_string(col) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
  }

  std::string peek_identifier() {
    skip();
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  std::string identifier(const char* what) {
    std::string id = peek_identifier();
    if (id.empty() || std::isalpha(static_cast<unsigned char>(id.front())) == 0) fail(std::string("expected ") + what);
    pos_ += id.size();
    return id;
  }

  std::string symbol_name() {
    skip();
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ']' && std::isspace(static_cast<unsigned char>(text_[end])) == 0) ++end;
    std::string s(text_.substr(pos_, end - pos_));
    if (s.empty()) fail("expected a symbol");
    pos_ = end;
    return s;
  }

  MsoFormula equivalence() {
    MsoFormula f = implication();
    while (eat("<->")) f = MsoFormula::iff(f, implication());
    return f;
  }

  MsoFormula implication() {
    MsoFormula f = disjunction();
    if (eat("->")) return MsoFormula::implies(f, implication());
    return f;
  }

  MsoFormula disjunction() {
    std::vector<MsoFormula> parts{conjunction()};
    while (eat("|")) parts.push_back(conjunction());
    return parts.size() == 1 ? parts.front() : MsoFormula::any_of(std::move(parts));
  }

  MsoFormula conjunction() {
    std::vector<MsoFormula> parts{unary()};
    while (eat("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts.front() : MsoFormula::all_of(std::move(parts));
  }

  MsoFormula unary() {
    if (eat("!")) return !unary();
    const std::string word = peek_identifier();
    if (word == "EX" || word == "ALL") {
      pos_ += word.size();
      std::vector<std::string> vars;
      while (true) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == '.') break;
        std::string v = identifier("a variable");
        if (v == "EX" || v == "ALL" || v == "in" || v == "true" || v == "false") fail("'" + v + "' is reserved");
        vars.push_back(std::move(v));
      }
      if (vars.empty()) fail("quantifier without variables");
      expect(".");
      MsoFormula body = equivalence();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = word == "EX" ? MsoFormula::exists(*it, body) : MsoFormula::forall(*it, body);
      return body;
    }
    return primary();
  }

  MsoFormula primary() {
    if (eat("(")) {
      MsoFormula f = equivalence();
      expect(")");
      return f;
    }
    const std::size_t start = pos_;
    const std::string word = identifier("a formula");
    if (word == "true") return MsoFormula::constant(true);
    if (word == "false") return MsoFormula::constant(false);
    if (word == "lab" || word == "edge") {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '[') {
        expect("[");
        const std::string sym = symbol_name();
        expect("]");
        expect("(");
        const std::string x = node_var();
        if (word == "lab") {
          expect(")");
          const auto id = alphabets_.nodes.find(sym);
          if (!id) fail("unknown node label '" + sym + "'");
          return MsoFormula::label(*id, x);
        }
        expect(",");
        const std::string y = node_var();
        expect(")");
        const auto id = alphabets_.edges.find(sym);
        if (!id) fail("unknown edge symbol '" + sym + "'");
        return MsoFormula::edge(*id, x, y);
      }
    }
    if (eat("=")) {
      if (!is_node_variable(word)) {
        pos_ = start;
        fail("'=' compares node variables");
      }
      return MsoFormula::equal(word, node_var());
    }
    if (peek_identifier() == "in") {
      pos_ += 2;
      if (!is_node_variable(word)) {
        pos_ = start;
        fail("'in' expects a node variable on the left");
      }
      const std::size_t at = pos_;
      const std::string set = identifier("a set variable");
      if (!is_set_variable(set)) {
        pos_ = at;
        fail("'in' expects a set variable on the right");
      }
      return MsoFormula::member(word, set);
    }
    pos_ = start;
    fail("expected an atom");
  }

  std::string node_var() {
    const std::size_t at = pos_;
    std::string v = identifier("a node variable");
    if (!is_node_variable(v)) {
      pos_ = at;
      fail("expected a node variable, got '" + v + "'");
    }
    return v;
  }

  std::string_view text_;
  const Alphabets& alphabets_;
  std::string source_;
  std::size_t first_line_;
  std::size_t pos_ = 0;
};

// Precedences: 0 equivalence, 1 implication, 2 disjunction, 3 conjunction, 4 unary.
std::string print(const MsoFormula& f, const Alphabets& alpha, int parent) {
  using Op = MsoFormula::Op;
  const auto& n = f.node();
  auto wrap = [&](int prec, std::string s) { return parent > prec ? "(" + s + ")" : s; };
  switch (n.op) {
    case Op::constant:
      return n.value ? "true" : "false";
    case Op::label:
      return "lab[" + alpha.nodes.name(n.symbol) + "](" + n.vars[0] + ")";
    case Op::edge:
      return "edge[" + alpha.edges.name(n.symbol) + "](" + n.vars[0] + "," + n.vars[1] + ")";
    case Op::equal:
      return n.vars[0] + " = " + n.vars[1];
    case Op::member:
      return n.vars[0] + " in " + n.vars[1];
    case Op::negation:
      return "!" + print(n.children[0], alpha, 4);
    case Op::conjunction:
    case Op::disjunction: {
      const bool conj = n.op == Op::conjunction;
      std::string s;
      for (std::size_t i = 0; i < n.children.size(); ++i)
        s += (i ? (conj ? " & " : " | ") : "") + print(n.children[i], alpha, conj ? 4 : 3);
      return wrap(conj ? 3 : 2, s);
    }
    case Op::implication:
      return wrap(1, print(n.children[0], alpha, 2) + " -> " + print(n.children[1], alpha, 1));
    case Op::equivalence:
      return wrap(0, print(n.children[0], alpha, 0) + " <-> " + print(n.children[1], alpha, 1));
    case Op::exists:
    case Op::forall:
      return wrap(0, std::string(n.op == Op::exists ? "EX " : "ALL ") + n.vars[0] + " . " + print(n.children[0], alpha, 0));
  }
  return "?";
}

}  // namespace

MsoFormula parse_mso(std::string_view text, const Alphabets& alphabets, std::string_view source) {
  return MsoParser(text, alphabets, std::string(source), 1).parse();
}

std::string to_text(const MsoFormula& f, const Alphabets& alphabets) { return print(f, alphabets, 0); }

std::pair<MsoFormula, Alphabets> parse_mso_file(std::string_view text, std::string_view source) {
  const std::string src(source);
  const auto formula_at = text.find("formula");
  const auto header = detail::tokenize_lines(text.substr(0, formula_at == std::string_view::npos ? text.size() : formula_at));
  if (header.empty() || header.front().tokens != std::vector<std::string>{"mso"})
    throw ParseError(src, header.empty() ? 0 : header.front().number, "expected 'mso' header");
  std::vector<std::string> nodes;
  std::vector<std::string> edges{"blank"};
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto& l = header[i];
    std::vector<std::string> rest(l.tokens.begin() + 1, l.tokens.end());
    if (l.tokens[0] == "node_alphabet") {
      nodes = rest;
    } else if (l.tokens[0] == "edge_alphabet") {
      edges = rest;
    } else {
      throw ParseError(src, l.number, "unexpected '" + l.tokens[0] + "'");
    }
  }
  if (nodes.empty()) throw ParseError(src, 0, "missing node_alphabet");
  if (formula_at == std::string_view::npos) throw ParseError(src, 0, "missing formula");
  Alphabets alpha;
  try {
    alpha = Alphabets{SymbolSet(nodes), SymbolSet(edges)};
  } catch (const DomainError& e) {
    throw ParseError(src, 0, e.what());
  }
  const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + formula_at, '\n'));
  const std::string_view body = text.substr(formula_at + 7);
  return {MsoParser(body, alpha, src, line).parse(), alpha};
}

std::string format_mso_file(const MsoFormula& f, const Alphabets& alphabets) {
  std::ostringstream out;
  out << "mso\nnode_alphabet";
  for (const auto& s : alphabets.nodes.names()) out << ' ' << s;
  out << "\nedge_alphabet";
  for (const auto& s : alphabets.edges.names()) out << ' ' << s;
  out << "\nformula " << to_text(f, alphabets) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Model checking

namespace {

class ModelChecker {
 public:
  ModelChecker(const LabeledGraph& g) : g_(g), n_(g.node_count()) {
    if (n_ > 63) throw DomainError("eval_mso supports at most 63 nodes");
    out_.assign(g.graph.edge_symbols() * n_, 0);
    for (const auto& e : g.graph.edges()) out_[e.symbol * n_ + e.from] |= std::uint64_t{1} << e.to;
  }

  bool run(const MsoFormula& f, const Assignment& alpha) {
    for (const auto& v : f.free_variables()) {
      if (is_node_variable(v)) {
        auto it = alpha.nodes.find(v);
        if (it == alpha.nodes.end()) throw DomainError("no value for free variable '" + v + "'");
        if (it->second >= n_) throw DomainError("node " + std::to_string(it->second) + " out of range");
        node_scope_[v].push_back(push_node(it->second));
      } else {
        auto it = alpha.sets.find(v);
        if (it == alpha.sets.end()) throw DomainError("no value for free variable '" + v + "'");
        std::uint64_t mask = 0;
        for (NodeId u : it->second) {
          if (u >= n_) throw DomainError("node " + std::to_string(u) + " out of range");
          mask |= std::uint64_t{1} << u;
        }
        set_scope_[v].push_back(push_set(mask));
      }
    }
    for (const auto& [v, x] : alpha.nodes)
      if (!f.free_variables().count(v)) throw DomainError("assignment binds '" + v + "', which is not free");
    for (const auto& [v, x] : alpha.sets)
      if (!f.free_variables().count(v)) throw DomainError("assignment binds '" + v + "', which is not free");
    const int root = compile(f);
    return eval(root);
  }

 private:
  struct Cell {
    MsoFormula::Op op = MsoFormula::Op::constant;
    bool value = false;
    SymbolId symbol = 0;
    int a = -1;
    int b = -1;
    std::vector<int> kids;
  };

  int push_node(NodeId v) {
    nodes_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }
  int push_set(std::uint64_t m) {
    sets_.push_back(m);
    return static_cast<int>(sets_.size()) - 1;
  }

  int node_slot(const std::string& v) { return node_scope_.at(v).back(); }
  int set_slot(const std::string& v) { return set_scope_.at(v).back(); }

  int compile(const MsoFormula& f) {
    using Op = MsoFormula::Op;
    const auto& n = f.node();
    Cell c;
    c.op = n.op;
    c.value = n.value;
    c.symbol = n.symbol;
    switch (n.op) {
      case Op::label:
        c.a = node_slot(n.vars[0]);
        break;
      case Op::edge:
      case Op::equal:
        c.a = node_slot(n.vars[0]);
        c.b = node_slot(n.vars[1]);
        break;
      case Op::member:
        c.a = node_slot(n.vars[0]);
        c.b = set_slot(n.vars[1]);
        break;
      case Op::exists:
      case Op::forall: {
        const std::string& v = n.vars[0];
        const bool node = is_node_variable(v);
        c.a = node ? push_node(0) : push_set(0);
        c.b = node ? 1 : 0;
        auto& scope = node ? node_scope_[v] : set_scope_[v];
        scope.push_back(c.a);
        c.kids.push_back(compile(n.children[0]));
        scope.pop_back();
        break;
      }
      default:
        for (const auto& k : n.children) c.kids.push_back(compile(k));
    }
    cells_.push_back(std::move(c));
    return static_cast<int>(cells_.size()) - 1;
  }

  bool eval(int i) {
    using Op = MsoFormula::Op;
    const Cell& c = cells_[i];
    switch (c.op) {
      case Op::constant:
        return c.value;
      case Op::label:
        return g_.labels[nodes_[c.a]] == c.symbol;
      case Op::edge:
        return c.symbol < g_.graph.edge_symbols() && ((out_[c.symbol * n_ + nodes_[c.a]] >> nodes_[c.b]) & 1) != 0;
      case Op::equal:
        return nodes_[c.a] == nodes_[c.b];
      case Op::member:
        return ((sets_[c.b] >> nodes_[c.a]) & 1) != 0;
      case Op::negation:
        return !eval(c.kids[0]);
      case Op::conjunction:
        for (int k : c.kids)
          if (!eval(k)) return false;
        return true;
      case Op::disjunction:
        for (int k : c.kids)
          if (eval(k)) return true;
        return false;
      case Op::implication:
        return !eval(c.kids[0]) || eval(c.kids[1]);
      case Op::equivalence:
        return eval(c.kids[0]) == eval(c.kids[1]);
      case Op::exists:
      case Op::forall: {
        const bool want = c.op == Op::exists;
        if (c.b == 1) {
          for (NodeId v = 0; v < n_; ++v) {
            nodes_[c.a] = v;
            if (eval(c.kids[0]) == want) return want;
          }
        } else {
          const std::uint64_t limit = std::uint64_t{1} << n_;
          for (std::uint64_t m = 0; m < limit; ++m) {
            sets_[c.a] = m;
            if (eval(c.kids[0]) == want) return want;
          }
        }
        return !want;
      }
    }
    return false;
  }

  const LabeledGraph& g_;
  std::size_t n_;
  std::vector<std::uint64_t> out_;
  std::vector<Cell> cells_;
  std::vector<NodeId> nodes_;
  std::vector<std::uint64_t> sets_;
  std::map<std::string, std::vector<int>> node_scope_;
  std::map<std::string, std::vector<int>> set_scope_;
};

}  // namespace

bool eval_mso(const MsoFormula& f, const LabeledGraph& g, const Assignment& alpha) {
  return ModelChecker(g).run(f, alpha);
}

// ---------------------------------------------------------------------------
// Annotated alphabets

namespace {

SymbolSet annotated_symbols(const SymbolSet& base, const std::vector<std::string>& vars) {
  if (vars.size() > 16) throw DomainError("too many free variables to annotate");
  std::vector<std::string> names;
  for (const auto& b : base.names())
    for (std::uint32_t mask = 0; mask < (1u << vars.size()); ++mask) {
      std::string s = b;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if ((mask >> i) & 1) s += "+" + vars[i];
      names.push_back(std::move(s));
    }
  return SymbolSet(std::move(names));
}

}  // namespace

AnnotatedAlphabet::AnnotatedAlphabet(SymbolSet base, std::vector<std::string> vars)
    : base_(std::move(base)), vars_(std::move(vars)), symbols_(annotated_symbols(base_, vars_)) {}

std::uint32_t AnnotatedAlphabet::bit(std::string_view v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) return 1u << i;
  throw DomainError("variable '" + std::string(v) + "' is not annotated");
}

LabeledGraph annotate(const LabeledGraph& g, const AnnotatedAlphabet& sigma, const Assignment& alpha) {
  std::vector<SymbolId> labels(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < sigma.vars().size(); ++i) {
      const std::string& x = sigma.vars()[i];
      bool in = false;
      if (auto it = alpha.nodes.find(x); it != alpha.nodes.end()) in = it->second == v;
      if (auto it = alpha.sets.find(x); it != alpha.sets.end()) in = it->second.count(v) != 0;
      if (in) mask |= 1u << i;
    }
    labels[v] = sigma.encode(g.labels[v], mask);
  }
  return LabeledGraph(g.graph, std::move(labels));
}

// ---------------------------------------------------------------------------
// Compilation

Adga exactly_one(const AnnotatedAlphabet& sigma, std::string_view x, const SymbolSet& edges) {
  const std::uint32_t bit = sigma.bit(x);
  SpecBuilder b({sigma.symbols(), edges});
  const StateId idle = b.state("idle", StateKind::permanent);
  const StateId mark = b.state("mark", StateKind::universal);
  const StateId spade = b.state("spade", StateKind::permanent);
  const StateId heart = b.state("heart", StateKind::permanent);
  for (SymbolId s = 0; s < sigma.symbols().size(); ++s) b.init(s, (sigma.mask_of(s) & bit) ? mark : idle);
  b.rule(mark, Condition::truth(), {spade, heart});
  const Condition s = Condition::contains(0, spade);
  const Condition h = Condition::contains(0, heart);
  b.acceptance((s && !h) || (!s && h));
  return b.build();
}

namespace {

class Compiler {
 public:
  Compiler(const Alphabets& alphabets) : alphabets_(alphabets) {}

  struct Result {
    Adga automaton;
    std::vector<std::string> vars;
  };

  Result compile(const MsoFormula& f) {
    using Op = MsoFormula::Op;
    const auto& n = f.node();
    const std::vector<std::string> vars(f.free_variables().begin(), f.free_variables().end());
    switch (n.op) {
      case Op::constant:
        return {checker(vars, [&](SymbolId, std::uint32_t) { return n.value; }), vars};
      case Op::label: {
        const AnnotatedAlphabet sigma(alphabets_.nodes, vars);
        const std::uint32_t x = sigma.bit(n.vars[0]);
        return {checker(vars, [&](SymbolId base, std::uint32_t m) { return !(m & x) || base == n.symbol; }), vars};
      }
      case Op::equal: {
        const AnnotatedAlphabet sigma(alphabets_.nodes, vars);
        const std::uint32_t x = sigma.bit(n.vars[0]);
        const std::uint32_t y = sigma.bit(n.vars[1]);
        return {checker(vars, [&](SymbolId, std::uint32_t m) { return ((m & x) != 0) == ((m & y) != 0); }), vars};
      }
      case Op::member: {
        const AnnotatedAlphabet sigma(alphabets_.nodes, vars);
        const std::uint32_t x = sigma.bit(n.vars[0]);
        const std::uint32_t set = sigma.bit(n.vars[1]);
        return {checker(vars, [&](SymbolId, std::uint32_t m) { return !(m & x) || (m & set); }), vars};
      }
      case Op::edge:
        return {edge_automaton(vars, n.symbol, n.vars[0], n.vars[1]), vars};
      case Op::negation: {
        Result r = compile(n.children[0]);
        return {complement(r.automaton), r.vars};
      }
      case Op::conjunction:
      case Op::disjunction: {
        Result acc = compile(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          Result next = compile(n.children[i]);
          std::vector<std::string> joint;
          std::set_union(acc.vars.begin(), acc.vars.end(), next.vars.begin(), next.vars.end(), std::back_inserter(joint));
          const Adga a1 = extend(acc.automaton, acc.vars, joint);
          const Adga a2 = extend(next.automaton, next.vars, joint);
          acc = {n.op == Op::conjunction ? conjoin(a1, a2) : disjoin(a1, a2), joint};
        }
        return acc;
      }
      case Op::exists: {
        const std::string& v = n.vars[0];
        Result body = compile(n.children[0]);
        if (!std::binary_search(body.vars.begin(), body.vars.end(), v)) return body;
        const AnnotatedAlphabet inner(alphabets_.nodes, body.vars);
        Adga a = body.automaton;
        if (is_node_variable(v)) a = conjoin(a, exactly_one(inner, v, alphabets_.edges));
        std::vector<std::string> outer_vars;
        for (const auto& w : body.vars)
          if (w != v) outer_vars.push_back(w);
        const AnnotatedAlphabet outer(alphabets_.nodes, outer_vars);
        std::vector<SymbolId> map;
        for (SymbolId s = 0; s < inner.symbols().size(); ++s)
          map.push_back(outer.encode(inner.base_of(s), restrict(inner.mask_of(s), body.vars, outer_vars)));
        return {project(a, Projection(inner.symbols(), outer.symbols(), std::move(map))), outer_vars};
      }
      default:
        throw Error("compile_mso: formula not desugared");
    }
  }

 private:
  static std::uint32_t restrict(std::uint32_t mask, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    std::uint32_t out = 0;
    for (std::size_t j = 0; j < to.size(); ++j) {
      const auto it = std::find(from.begin(), from.end(), to[j]);
      if (it != from.end() && ((mask >> (it - from.begin())) & 1)) out |= 1u << j;
    }
    return out;
  }

  Adga extend(const Adga& a, const std::vector<std::string>& from, const std::vector<std::string>& to) const {
    if (from == to) return a;
    const AnnotatedAlphabet wide(alphabets_.nodes, to);
    const AnnotatedAlphabet narrow(alphabets_.nodes, from);
    return relabel(a, wide.symbols(), [&](SymbolId s) {
      return narrow.encode(wide.base_of(s), restrict(wide.mask_of(s), to, from));
    });
  }

  static Adga conjoin(const Adga& a1, const Adga& a2) {
    if (classify(a1) != AutomatonClass::adga && classify(a2) != AutomatonClass::adga)
      return product(a1, a2, Combine::conjunction);
    return intersect_adga(a1, a2);
  }

  static Adga disjoin(const Adga& a1, const Adga& a2) {
    if (classify(a1) == AutomatonClass::ddga && classify(a2) == AutomatonClass::ddga)
      return product(a1, a2, Combine::disjunction);
    return union_of(a1, a2);
  }

  /// Length-0 automaton in which each node checks its own label.
  Adga checker(const std::vector<std::string>& vars, const std::function<bool(SymbolId, std::uint32_t)>& ok) const {
    const AnnotatedAlphabet sigma(alphabets_.nodes, vars);
    SpecBuilder b({sigma.symbols(), alphabets_.edges});
    const StateId yes = b.state("yes", StateKind::permanent);
    const StateId no = b.state("no", StateKind::permanent);
    for (SymbolId s = 0; s < sigma.symbols().size(); ++s) b.init(s, ok(sigma.base_of(s), sigma.mask_of(s)) ? yes : no);
    b.acceptance(!Condition::contains(0, no));
    return b.build();
  }

  /// Length 1: the y-marked node checks that an x-marked node sent it a
  /// message through a g-edge.
  Adga edge_automaton(const std::vector<std::string>& vars, SymbolId g, const std::string& x, const std::string& y) const {
    const AnnotatedAlphabet sigma(alphabets_.nodes, vars);
    const std::uint32_t bx = sigma.bit(x);
    const std::uint32_t by = sigma.bit(y);
    SpecBuilder b({sigma.symbols(), alphabets_.edges});
    const StateId plain = b.state("o", StateKind::existential);
    const StateId sx = b.state("x", StateKind::existential);
    const StateId sy = b.state("y", StateKind::existential);
    const StateId sxy = b.state("xy", StateKind::existential);
    const StateId yes = b.state("yes", StateKind::permanent);
    const StateId no = b.state("no", StateKind::permanent);
    for (SymbolId s = 0; s < sigma.symbols().size(); ++s) {
      const std::uint32_t m = sigma.mask_of(s);
      const bool mx = (m & bx) != 0;
      const bool my = (m & by) != 0;
      b.init(s, mx && my ? sxy : mx ? sx : my ? sy : plain);
    }
    const Condition heard = Condition::meets(static_cast<int>(g), StateSet{sx, sxy});
    for (StateId q : {sy, sxy}) {
      b.rule(q, heard, {yes});
      b.rule(q, !heard, {no});
    }
    for (StateId q : {plain, sx}) b.rule(q, Condition::truth(), {yes});
    b.acceptance(!Condition::contains(0, no));
    return b.build();
  }

  const Alphabets& alphabets_;
};

}  // namespace

Adga compile_mso(const MsoFormula& f, const Alphabets& alphabets) {
  return Compiler(alphabets).compile(f.desugared()).automaton;
}

// ---------------------------------------------------------------------------
// Encoding automata as sentences

MsoFormula mso_of_adga(const Adga& input) {
  const Adga a = trim(synchronize(input, input.length()));
  const int len = a.length();
  const auto& alpha = a.alphabets();
  const int gamma = static_cast<int>(alpha.edges.size());

  std::vector<std::vector<StateId>> level_states(static_cast<std::size_t>(len) + 1);
  StateSet reached_permanent;
  if (len == 0)
    for (StateId q : a.init_map()) reached_permanent.insert(q);
  for (const auto& r : a.rules())
    for (StateId t : r.targets)
      if (a.is_permanent(t)) reached_permanent.insert(t);
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (a.is_permanent(q)) {
      if (reached_permanent.contains(q)) level_states[len].push_back(q);
    } else {
      level_states[a.level(q)].push_back(q);
    }
  }

  auto set_var = [](int level, StateId q) { return "U" + std::to_string(level) + "_" + std::to_string(q); };
  auto in = [&](int level, const std::string& x, StateId q) {
    if (level > 0) return MsoFormula::member(x, set_var(level, q));
    std::vector<MsoFormula> labels;
    for (SymbolId l = 0; l < alpha.nodes.size(); ++l)
      if (a.init(l) == q) labels.push_back(MsoFormula::label(l, x));
    return MsoFormula::any_of(std::move(labels));
  };
  auto states_in = [&](int level, const StateSet& t) {
    std::vector<StateId> out;
    for (StateId q : level_states[level])
      if (t.contains(q)) out.push_back(q);
    return out;
  };

  // Guard of a node `x` at `level`, reading its in-neighbors' states.
  std::function<MsoFormula(const Condition&, int)> guard = [&](const Condition& c, int level) -> MsoFormula {
    const auto& n = c.node();
    switch (n.op) {
      case Condition::Op::constant:
        return MsoFormula::constant(n.value);
      case Condition::Op::atom: {
        std::vector<MsoFormula> edges;
        for (int ch = 0; ch < gamma; ++ch)
          if (n.channel == Condition::any_channel || n.channel == ch)
            edges.push_back(MsoFormula::edge(static_cast<SymbolId>(ch), "y", "x"));
        std::vector<MsoFormula> states;
        for (StateId t : states_in(level, n.states)) states.push_back(in(level, "y", t));
        return MsoFormula::exists("y", MsoFormula::any_of(std::move(edges)) && MsoFormula::any_of(std::move(states)));
      }
      case Condition::Op::negation:
        return !guard(n.operands[0], level);
      case Condition::Op::conjunction:
      case Condition::Op::disjunction: {
        std::vector<MsoFormula> parts;
        for (const auto& o : n.operands) parts.push_back(guard(o, level));
        return n.op == Condition::Op::conjunction ? MsoFormula::all_of(std::move(parts))
                                                  : MsoFormula::any_of(std::move(parts));
      }
    }
    return MsoFormula::constant(false);
  };

  std::function<MsoFormula(const Condition&)> winning = [&](const Condition& c) -> MsoFormula {
    const auto& n = c.node();
    switch (n.op) {
      case Condition::Op::constant:
        return MsoFormula::constant(n.value);
      case Condition::Op::atom: {
        std::vector<MsoFormula> states;
        for (StateId t : states_in(len, n.states)) states.push_back(in(len, "x", t));
        return MsoFormula::exists("x", MsoFormula::any_of(std::move(states)));
      }
      case Condition::Op::negation:
        return !winning(n.operands[0]);
      case Condition::Op::conjunction:
      case Condition::Op::disjunction: {
        std::vector<MsoFormula> parts;
        for (const auto& o : n.operands) parts.push_back(winning(o));
        return n.op == Condition::Op::conjunction ? MsoFormula::all_of(std::move(parts))
                                                  : MsoFormula::any_of(std::move(parts));
      }
    }
    return MsoFormula::constant(false);
  };

  auto successor = [&](int level) {
    const int next = level + 1;
    std::vector<MsoFormula> partition;
    for (StateId q : level_states[next]) {
      std::vector<MsoFormula> parts{MsoFormula::member("x", set_var(next, q))};
      for (StateId p : level_states[next])
        if (p != q) parts.push_back(!MsoFormula::member("x", set_var(next, p)));
      partition.push_back(MsoFormula::all_of(std::move(parts)));
    }
    std::vector<MsoFormula> legal;
    for (StateId q : level_states[level]) {
      std::vector<MsoFormula> choices;
      for (StateId p : level_states[next]) {
        std::vector<MsoFormula> guards;
        for (std::size_t ri : a.rules_from(q)) {
          const auto& r = a.rules()[ri];
          if (std::find(r.targets.begin(), r.targets.end(), p) != r.targets.end()) guards.push_back(guard(r.guard, level));
        }
        if (!guards.empty())
          choices.push_back(MsoFormula::member("x", set_var(next, p)) && MsoFormula::any_of(std::move(guards)));
      }
      legal.push_back(MsoFormula::implies(in(level, "x", q), MsoFormula::any_of(std::move(choices))));
    }
    return MsoFormula::forall("x", MsoFormula::any_of(std::move(partition)) && MsoFormula::all_of(std::move(legal)));
  };

  MsoFormula f = winning(a.acceptance());
  for (int level = len - 1; level >= 0; --level) {
    const bool universal = a.level_kind(level) == StateKind::universal;
    MsoFormula body = universal ? MsoFormula::implies(successor(level), f) : (successor(level) && f);
    const auto& next = level_states[level + 1];
    for (auto it = next.rbegin(); it != next.rend(); ++it)
      body = universal ? MsoFormula::forall(set_var(level + 1, *it), body)
                       : MsoFormula::exists(set_var(level + 1, *it), body);
    f = body;
  }
  return f;
}

}  // namespace dga
