#include "dga/automaton_io.hpp"

#include <sstream>

#include "dga/builder.hpp"
#include "dga/error.hpp"
#include "text_util.hpp"

namespace dga {

namespace {

using AtomPrinter = std::function<std::string(int channel, StateId q)>;

std::string print(const Condition& c, const AtomPrinter& atom, int gamma, int parent_prec) {
  const auto& n = c.node();
  switch (n.op) {
    case Condition::Op::constant:
      return n.value ? "true" : "false";
    case Condition::Op::atom: {
      std::vector<std::string> parts;
      const int lo = n.channel == Condition::any_channel ? 0 : n.channel;
      const int hi = n.channel == Condition::any_channel ? gamma : n.channel + 1;
      for (int ch = lo; ch < hi; ++ch) n.states.for_each([&](StateId q) { parts.push_back(atom(ch, q)); });
      if (parts.size() == 1) return parts.front();
      std::string s;
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " | " : "") + parts[i];
      return parent_prec > 1 ? "(" + s + ")" : s;
    }
    case Condition::Op::negation:
      return "!" + print(n.operands.front(), atom, gamma, 3);
    case Condition::Op::conjunction:
    case Condition::Op::disjunction: {
      const bool conj = n.op == Condition::Op::conjunction;
      const int prec = conj ? 2 : 1;
      std::string s;
      for (std::size_t i = 0; i < n.operands.size(); ++i)
        s += (i ? (conj ? " & " : " | ") : "") + print(n.operands[i], atom, gamma, prec);
      return parent_prec > prec ? "(" + s + ")" : s;
    }
  }
  return "?";
}

/// Recursive-descent parser for guard and acceptance expressions.
class ExprParser {
 public:
  using AtomReader = std::function<Condition(const std::string& fn, const std::string& args)>;

  ExprParser(std::string text, AtomReader atom, std::string source, std::size_t line)
      : text_(std::move(text)), atom_(std::move(atom)), source_(std::move(source)), line_(line) {}

  Condition parse() {
    Condition c = disjunction();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + text_.substr(pos_) + "'");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Condition disjunction() {
    std::vector<Condition> parts{conjunction()};
    while (eat('|')) parts.push_back(conjunction());
    return Condition::any_of(std::move(parts));
  }

  Condition conjunction() {
    std::vector<Condition> parts{unary()};
    while (eat('&')) parts.push_back(unary());
    return Condition::all_of(std::move(parts));
  }

  Condition unary() {
    if (eat('!')) return !unary();
    if (eat('(')) {
      Condition c = disjunction();
      if (!eat(')')) fail("expected ')'");
      return c;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_'))
      ++pos_;
    const std::string word = text_.substr(start, pos_ - start);
    if (word.empty()) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of expression");
    if (word == "true") return Condition::truth();
    if (word == "false") return Condition::falsity();
    if (!eat('(')) fail("expected '(' after '" + word + "'");
    const std::size_t close = text_.find(')', pos_);
    if (close == std::string::npos) fail("unterminated '" + word + "('");
    std::string args = text_.substr(pos_, close - pos_);
    pos_ = close + 1;
    return atom_(word, args);
  }

  std::string text_;
  AtomReader atom_;
  std::string source_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& toks, std::size_t from, std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to; ++i) s += (i > from ? " " : "") + toks[i];
  return s;
}

/// Names inside `{ ... }` spanning tokens [from, end).
std::vector<std::string> brace_list(const std::vector<std::string>& toks, std::size_t from, const std::string& src,
                                    std::size_t line) {
  std::string s = trim(join(toks, from, toks.size()));
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError(src, line, "expected '{ ... }'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

StateKind parse_kind(const std::string& tok, const std::string& src, std::size_t line) {
  if (tok == "E") return StateKind::existential;
  if (tok == "A") return StateKind::universal;
  if (tok == "P") return StateKind::permanent;
  throw ParseError(src, line, "state kind must be E, A or P, got '" + tok + "'");
}

}  // namespace

AdgaSpec parse_adga_spec(std::string_view text, std::string_view source) {
  const std::string src(source);
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty() || lines.front().tokens != std::vector<std::string>{"adga"})
    throw ParseError(src, lines.empty() ? 0 : lines.front().number, "expected 'adga' header");

  std::optional<SymbolSet> nodes;
  std::optional<SymbolSet> edges;
  struct Pending {
    std::size_t line;
    std::vector<std::string> tokens;
  };
  std::vector<Pending> states, inits, rules, accepts, accept_ifs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto& kw = l.tokens.front();
    auto symbols = [&] {
      if (l.tokens.size() < 2) throw ParseError(src, l.number, kw + " needs at least one symbol");
      try {
        return SymbolSet(std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end()));
      } catch (const DomainError& e) {
        throw ParseError(src, l.number, e.what());
      }
    };
    if (kw == "node_alphabet") {
      nodes = symbols();
    } else if (kw == "edge_alphabet") {
      edges = symbols();
    } else if (kw == "state") {
      states.push_back({l.number, l.tokens});
    } else if (kw == "init") {
      inits.push_back({l.number, l.tokens});
    } else if (kw == "rule") {
      rules.push_back({l.number, l.tokens});
    } else if (kw == "accept") {
      accepts.push_back({l.number, l.tokens});
    } else if (kw == "accept_if") {
      accept_ifs.push_back({l.number, l.tokens});
    } else {
      throw ParseError(src, l.number, "unknown directive '" + kw + "'");
    }
  }
  if (!nodes) throw ParseError(src, 0, "missing node_alphabet");
  if (!edges) edges = SymbolSet({"blank"});

  AdgaSpec spec;
  spec.alphabets = {*nodes, *edges};
  std::unordered_map<std::string, StateId> ids;
  for (const auto& p : states) {
    if (p.tokens.size() != 3) throw ParseError(src, p.line, "expected 'state <name> <E|A|P>'");
    if (!ids.emplace(p.tokens[1], static_cast<StateId>(spec.states.size())).second)
      throw ParseError(src, p.line, "state '" + p.tokens[1] + "' declared twice");
    spec.states.push_back({p.tokens[1], parse_kind(p.tokens[2], src, p.line), 0});
  }
  auto state_id = [&](const std::string& name, std::size_t line) {
    auto it = ids.find(trim(name));
    if (it == ids.end()) throw ParseError(src, line, "unknown state '" + trim(name) + "'");
    return it->second;
  };

  std::vector<bool> has_init(nodes->size(), false);
  spec.init.assign(nodes->size(), 0);
  for (const auto& p : inits) {
    if (p.tokens.size() != 4 || p.tokens[2] != "->") throw ParseError(src, p.line, "expected 'init <label> -> <state>'");
    auto label = nodes->find(p.tokens[1]);
    if (!label) throw ParseError(src, p.line, "unknown label '" + p.tokens[1] + "'");
    if (has_init[*label]) throw ParseError(src, p.line, "label '" + p.tokens[1] + "' has two init lines");
    has_init[*label] = true;
    spec.init[*label] = state_id(p.tokens[3], p.line);
  }
  for (SymbolId a = 0; a < nodes->size(); ++a)
    if (!has_init[a]) throw ParseError(src, 0, "no init line for label '" + nodes->name(a) + "'");

  for (const auto& p : rules) {
    const auto arrow = std::find(p.tokens.begin(), p.tokens.end(), "->");
    if (p.tokens.size() < 4 || arrow == p.tokens.end())
      throw ParseError(src, p.line, "expected 'rule <state> [<guard>] -> { <states> }'");
    const auto a_idx = static_cast<std::size_t>(arrow - p.tokens.begin());
    TransitionRule rule;
    rule.source = state_id(p.tokens[1], p.line);
    std::string guard = trim(join(p.tokens, 2, a_idx));
    if (guard.size() >= 2 && guard.front() == '[' && guard.back() == ']') guard = guard.substr(1, guard.size() - 2);
    if (!trim(guard).empty()) {
      ExprParser parser(
          guard,
          [&](const std::string& fn, const std::string& args) {
            if (fn != "contains") throw ParseError(src, p.line, "unknown guard atom '" + fn + "'");
            const auto comma = args.find(',');
            if (comma == std::string::npos) throw ParseError(src, p.line, "expected contains(<edge symbol>,<state>)");
            auto g = edges->find(trim(args.substr(0, comma)));
            if (!g) throw ParseError(src, p.line, "unknown edge symbol '" + trim(args.substr(0, comma)) + "'");
            return Condition::contains(static_cast<int>(*g), state_id(args.substr(comma + 1), p.line));
          },
          src, p.line);
      rule.guard = parser.parse();
    }
    for (const auto& t : brace_list(p.tokens, a_idx + 1, src, p.line)) rule.targets.push_back(state_id(t, p.line));
    if (rule.targets.empty()) throw ParseError(src, p.line, "rule has no targets");
    spec.rules.push_back(std::move(rule));
  }

  if (!accepts.empty() && !accept_ifs.empty())
    throw ParseError(src, accept_ifs.front().line, "mixing 'accept' and 'accept_if' lines");
  if (accept_ifs.size() > 1) throw ParseError(src, accept_ifs[1].line, "more than one 'accept_if' line");
  StateSet perm;
  for (StateId q = 0; q < spec.states.size(); ++q)
    if (spec.states[q].kind == StateKind::permanent) perm.insert(q);
  if (!accept_ifs.empty()) {
    const auto& p = accept_ifs.front();
    ExprParser parser(
        join(p.tokens, 1, p.tokens.size()),
        [&](const std::string& fn, const std::string& args) {
          if (fn != "has") throw ParseError(src, p.line, "unknown acceptance atom '" + fn + "'");
          return Condition::contains(0, state_id(args, p.line));
        },
        src, p.line);
    spec.acceptance = parser.parse();
  } else {
    std::vector<StateSet> sets;
    for (const auto& p : accepts) {
      StateSet s;
      for (const auto& t : brace_list(p.tokens, 1, src, p.line)) {
        const StateId q = state_id(t, p.line);
        if (!perm.contains(q)) throw ParseError(src, p.line, "accepting set contains nonpermanent state '" + t + "'");
        s.insert(q);
      }
      sets.push_back(s);
    }
    spec.acceptance = occurrence_sets_condition(sets, perm);
  }
  return spec;
}

Adga parse_adga(std::string_view text, std::string_view source) {
  AdgaSpec spec = parse_adga_spec(text, source);
  ValidationResult r = validate(std::move(spec));
  if (!r.automaton) {
    std::string msg = "invalid automaton:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw ParseError(std::string(source), 0, msg);
  }
  return std::move(*r.automaton);
}

std::string format_guard(const Condition& guard, const Adga& a) {
  const auto& edges = a.alphabets().edges;
  return print(
      guard, [&](int ch, StateId q) { return "contains(" + edges.name(ch) + "," + a.state(q).name + ")"; },
      static_cast<int>(edges.size()), 0);
}

std::string format_acceptance(const Condition& acceptance, const Adga& a) {
  return print(
      acceptance, [&](int, StateId q) { return "has(" + a.state(q).name + ")"; }, 1, 0);
}

std::string format_adga(const Adga& a, std::size_t max_listed) {
  std::ostringstream out;
  out << "adga\nnode_alphabet";
  for (const auto& s : a.alphabets().nodes.names()) out << ' ' << s;
  out << "\nedge_alphabet";
  for (const auto& s : a.alphabets().edges.names()) out << ' ' << s;
  out << '\n';
  for (const auto& s : a.states()) out << "state " << s.name << ' ' << kind_letter(s.kind) << '\n';
  for (SymbolId l = 0; l < a.alphabets().nodes.size(); ++l)
    out << "init " << a.alphabets().nodes.name(l) << " -> " << a.state(a.init(l)).name << '\n';
  for (const auto& r : a.rules()) {
    out << "rule " << a.state(r.source).name << ' ';
    if (!r.guard.is_constant(true)) out << '[' << format_guard(r.guard, a) << "] ";
    out << "-> {";
    for (StateId t : r.targets) out << ' ' << a.state(t).name;
    out << " }\n";
  }
  if (a.permanent_states().size() <= max_listed) {
    for (const auto& s : accepting_sets(a, max_listed)) {
      out << "accept {";
      s.for_each([&](StateId q) { out << ' ' << a.state(q).name; });
      out << " }\n";
    }
  } else {
    out << "accept_if " << format_acceptance(a.acceptance(), a) << '\n';
  }
  return out.str();
}

}  // namespace dga
