#pragma once

// Tokenizer and recursive-descent readers for expressions, predicates and
// assertions. Shared by the assertion and program parsers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dga/assertion.hpp"
#include "dga/error.hpp"

namespace dga::detail {

struct Token {
  enum class Kind { identifier, integer, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> lex_program(std::string_view text, const std::string& source, std::size_t first_line = 1) {
  static const char* const kSymbols[] = {":=", "==", "!=", "<=", ">=", "<", ">", "=", "+", "-", "(",
                                         ")",  "{",  "}",  ",",  ";",  ":", "."};
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) != 0 || text[j] == '_')) ++j;
      t.kind = Token::Kind::identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) ++j;
      t.kind = Token::Kind::integer;
    } else {
      for (const char* s : kSymbols) {
        const std::string_view sv(s);
        if (text.substr(i, sv.size()) == sv) {
          j = i + sv.size();
          break;
        }
      }
      if (j == i) throw ParseError(source, line, "column " + std::to_string(col) + ": unexpected character '" + c + "'");
      t.kind = Token::Kind::symbol;
    }
    t.text = std::string(text.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

/// Names visible inside an expression.
struct Scope {
  std::vector<std::string> binders;
  std::string messages;  // empty when no message set is in scope
};

class Reader {
 public:
  Reader(std::vector<Token> tokens, const ValuationSpace& space, std::string source)
      : tokens_(std::move(tokens)), space_(space), source_(std::move(source)) {}

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  std::size_t position() const { return pos_; }
  void rewind(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(peek(), what); }
  [[noreturn]] void fail_at(const Token& t, const std::string& what) const {
    throw ParseError(source_, t.line, "column " + std::to_string(t.column) + ": " + what);
  }

  bool is(std::string_view text) const { return peek().kind != Token::Kind::end && peek().text == text; }
  bool eat(std::string_view text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "'" + found());
    return tokens_[pos_++];
  }
  std::string identifier(const char* what) {
    if (peek().kind != Token::Kind::identifier) fail(std::string("expected ") + what + found());
    return tokens_[pos_++].text;
  }
  long long integer(const char* what) {
    bool negative = eat("-");
    if (peek().kind != Token::Kind::integer) fail(std::string("expected ") + what + found());
    const std::string& s = tokens_[pos_++].text;
    long long v = 0;
    for (char c : s) {
      v = v * 10 + (c - '0');
      if (v > 1000000000LL) fail_at(tokens_[pos_ - 1], "integer too large");
    }
    return negative ? -v : v;
  }
  std::string found() const {
    return at_end() ? std::string(", found end of input") : ", found '" + peek().text + "'";
  }

  // Expressions ------------------------------------------------------------

  Expr expr(const Scope& scope) {
    Expr e = term(scope);
    while (is("+") || is("-")) {
      const bool add = peek().text == "+";
      ++pos_;
      Expr n;
      n.op = add ? Expr::Op::add : Expr::Op::sub;
      n.args = {std::move(e), term(scope)};
      e = std::move(n);
    }
    return e;
  }

  Expr term(const Scope& scope) {
    if (peek().kind == Token::Kind::integer) {
      const Token& t = peek();
      const long long v = integer("a constant");
      if (v > 1000000 || !space_.domain().contains(static_cast<int>(v)))
        fail_at(t, "constant " + t.text + " is outside the domain");
      return Expr::constant(static_cast<int>(v));
    }
    if (eat("(")) {
      Expr e = expr(scope);
      expect(")");
      return e;
    }
    const Token& t = peek();
    const std::string id = identifier("an expression");
    if (id == "max" || id == "min") {
      Expr e;
      e.op = id == "max" ? Expr::Op::max : Expr::Op::min;
      expect("(");
      if (!scope.messages.empty() && is(scope.messages)) {
        ++pos_;
        e.messages = true;
        if (eat("+")) {
          expect("{");
          e.args.push_back(expr(scope));
          while (eat(",")) e.args.push_back(expr(scope));
          expect("}");
        }
        while (eat(",")) e.args.push_back(expr(scope));
      } else {
        e.args.push_back(expr(scope));
        while (eat(",")) e.args.push_back(expr(scope));
      }
      expect(")");
      return e;
    }
    if (id == "M" || (!scope.messages.empty() && id == scope.messages))
      fail_at(t, "the message set '" + id + "' may only appear as the first argument of max or min inside a round with a send/receive header");
    for (std::size_t b = 0; b < scope.binders.size(); ++b) {
      if (scope.binders[b] != id) continue;
      expect(".");
      const Token& vt = peek();
      const std::string name = identifier("a member variable");
      const auto var = space_.var_index(name);
      if (!var) fail_at(vt, "undeclared variable '" + name + "'");
      return Expr::variable(static_cast<int>(b), *var);
    }
    fail_at(t, "unknown name '" + id + "'");
  }

  // Predicates ---------------------------------------------------------------

  BoolExpr predicate(const Scope& scope) {
    BoolExpr b = pred_and(scope);
    if (!is("or")) return b;
    BoolExpr n;
    n.op = BoolExpr::Op::disjunction;
    n.kids.push_back(std::move(b));
    while (eat("or")) n.kids.push_back(pred_and(scope));
    return n;
  }

  BoolExpr pred_and(const Scope& scope) {
    BoolExpr b = pred_unary(scope);
    if (!is("and")) return b;
    BoolExpr n;
    n.op = BoolExpr::Op::conjunction;
    n.kids.push_back(std::move(b));
    while (eat("and")) n.kids.push_back(pred_unary(scope));
    return n;
  }

  /// Atomic predicate: a comparison, `not` predicate, a constant, or a
  /// parenthesized predicate.
  BoolExpr pred_unary(const Scope& scope) {
    if (eat("not")) {
      BoolExpr n;
      n.op = BoolExpr::Op::negation;
      n.kids.push_back(pred_unary(scope));
      return n;
    }
    if (eat("true")) return BoolExpr{};
    if (eat("false")) {
      BoolExpr f;
      f.value = false;
      return f;
    }
    if (is("(")) {
      const std::size_t save = pos_;
      try {
        ++pos_;
        BoolExpr b = predicate(scope);
        expect(")");
        if (!is_comparison_operator()) return b;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    Expr lhs = expr(scope);
    if (!is_comparison_operator()) fail("expected a comparison" + found());
    const std::string op = tokens_[pos_++].text;
    BoolExpr::Cmp cmp = BoolExpr::Cmp::eq;
    if (op == "!=") cmp = BoolExpr::Cmp::ne;
    if (op == "<") cmp = BoolExpr::Cmp::lt;
    if (op == "<=") cmp = BoolExpr::Cmp::le;
    if (op == ">") cmp = BoolExpr::Cmp::gt;
    if (op == ">=") cmp = BoolExpr::Cmp::ge;
    return BoolExpr::compare(std::move(lhs), cmp, expr(scope));
  }

  bool is_comparison_operator() const {
    for (const char* op : {"==", "=", "!=", "<", "<=", ">", ">="})
      if (is(op)) return true;
    return false;
  }

  // Assertions ---------------------------------------------------------------

  Assertion assertion() {
    Assertion a = assertion_and();
    while (eat("or")) a = std::move(a) || assertion_and();
    return a;
  }

  Assertion assertion_and() {
    Assertion a = assertion_unary();
    while (eat("and")) a = std::move(a) && assertion_unary();
    return a;
  }

  Assertion assertion_unary() {
    if (eat("not")) return !assertion_unary();
    if (eat("true")) return Assertion::constant(true);
    if (eat("false")) return Assertion::constant(false);
    if (eat("(")) {
      Assertion a = assertion();
      expect(")");
      return a;
    }
    if (eat("all") || eat("some")) {
      const bool all = tokens_[pos_ - 1].text == "all";
      Scope scope{{identifier("a node name")}, {}};
      expect(":");
      BoolExpr p = pred_unary(scope);
      return all ? Assertion::node_all(scope.binders[0], std::move(p))
                 : Assertion::node_some(scope.binders[0], std::move(p));
    }
    if (eat("alledges")) {
      Scope scope;
      scope.binders.push_back(identifier("a sender name"));
      scope.binders.push_back(identifier("a receiver name"));
      if (scope.binders[0] == scope.binders[1]) fail("edge endpoints need distinct names");
      expect(":");
      BoolExpr p = pred_unary(scope);
      return Assertion::edge_all(scope.binders[0], scope.binders[1], std::move(p));
    }
    fail("expected an assertion" + found());
  }

 private:
  std::vector<Token> tokens_;
  const ValuationSpace& space_;
  std::string source_;
  std::size_t pos_ = 0;
};

std::string expr_text(const Expr& e, const ValuationSpace& space, const Scope& scope, int parent = 0);
std::string bool_text(const BoolExpr& b, const ValuationSpace& space, const Scope& scope, int parent = 0);

}  // namespace dga::detail
