#include "dga/dpl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dga/builder.hpp"
#include "dga/error.hpp"
#include "dpl_reader.hpp"

namespace dga {

namespace {

class ProgramParser {
 public:
  ProgramParser(std::string_view text, std::string source)
      : tokens_(detail::lex_program(text, source)), source_(std::move(source)) {}

  DplProgram parse() {
    DplProgram p;
    // The header is read with a placeholder space; constants are checked
    // once the domain is known.
    const ValuationSpace scratch(Domain({0}), {});
    detail::Reader head(tokens_, scratch, source_);
    head.expect("program");
    p.name = head.identifier("a program name");
    head.expect("domain");
    std::vector<int> values;
    while (head.peek().kind == detail::Token::Kind::integer || head.is("-")) {
      const long long v = head.integer("a domain value");
      if (v < 0 || v > 1000000) head.fail("domain values must be between 0 and 1000000");
      values.push_back(static_cast<int>(v));
    }
    const detail::Token& vars_tok = head.expect("vars");
    std::vector<std::string> vars;
    while (head.peek().kind == detail::Token::Kind::identifier && head.peek().text != "require") {
      if (head.peek(1).text == "{") break;
      vars.push_back(head.identifier("a variable"));
    }
    try {
      std::vector<int> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != values) throw DomainError("domain values must be ascending");
      p.space = ValuationSpace(Domain(values), vars);
    } catch (const DomainError& e) {
      head.fail_at(vars_tok, e.what());
    }
    detail::Reader r(tokens_, p.space, source_);
    r.rewind(head.position());
    p.pre_line = r.expect("require").line;
    p.pre = braced_assertion(r);
    p.items = items(r, p.space);
    p.post_line = r.expect("ensure").line;
    p.post = braced_assertion(r);
    if (!r.at_end()) r.fail("unexpected '" + r.peek().text + "' after ensure");
    return p;
  }

 private:
  static Assertion braced_assertion(detail::Reader& r) {
    r.expect("{");
    Assertion a = r.assertion();
    r.expect("}");
    return a;
  }

  std::vector<GlobalItem> items(detail::Reader& r, const ValuationSpace& space) {
    std::vector<GlobalItem> out;
    while (r.is("each") || r.is("assert") || r.is("while")) {
      GlobalItem item;
      item.line = r.peek().line;
      if (r.eat("each")) {
        item.kind = GlobalItem::Kind::round;
        item.block = block(r, space);
      } else if (r.eat("assert")) {
        item.kind = GlobalItem::Kind::check;
        item.assertion = braced_assertion(r);
      } else {
        r.expect("while");
        item.kind = GlobalItem::Kind::loop;
        item.assertion = r.assertion();
        if (!r.is("invariant")) r.fail("every loop needs an invariant" + r.found());
        r.expect("invariant");
        item.invariant = braced_assertion(r);
        r.expect("{");
        item.body = items(r, space);
        r.expect("}");
      }
      out.push_back(std::move(item));
    }
    return out;
  }

  LocalBlock block(detail::Reader& r, const ValuationSpace& space) {
    LocalBlock b;
    b.binder = r.identifier("a node name");
    r.expect("{");
    detail::Scope scope{{b.binder}, {}};
    if (r.eat("send")) {
      b.send = member(r, b.binder, space);
      r.expect("receive");
      b.messages = r.identifier("a message set name");
      if (b.messages == b.binder) r.fail("the message set needs its own name");
      r.expect(";");
      scope.messages = b.messages;
    }
    b.commands = commands(r, scope, space);
    r.expect("}");
    return b;
  }

  static std::size_t member(detail::Reader& r, const std::string& binder, const ValuationSpace& space) {
    const detail::Token& t = r.peek();
    if (r.identifier("a member variable reference") != binder) r.fail_at(t, "expected '" + binder + ".<variable>'");
    r.expect(".");
    const detail::Token& vt = r.peek();
    const auto var = space.var_index(r.identifier("a member variable"));
    if (!var) r.fail_at(vt, "undeclared variable '" + vt.text + "'");
    return *var;
  }

  std::vector<LocalCommand> commands(detail::Reader& r, const detail::Scope& scope, const ValuationSpace& space) {
    std::vector<LocalCommand> out;
    while (!r.is("}") && !r.at_end()) {
      LocalCommand c;
      if (r.is("send")) r.fail("send/receive may only open a block");
      if (r.eat("skip")) {
        r.expect(";");
      } else if (r.eat("if")) {
        c.op = LocalCommand::Op::conditional;
        c.condition = r.predicate(scope);
        r.expect("then");
        r.expect("{");
        c.then_branch = commands(r, scope, space);
        r.expect("}");
        if (r.eat("else")) {
          r.expect("{");
          c.else_branch = commands(r, scope, space);
          r.expect("}");
        }
      } else {
        c.op = LocalCommand::Op::assign;
        c.var = member(r, scope.binders[0], space);
        r.expect(":=");
        c.value = r.expr(scope);
        r.expect(";");
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<detail::Token> tokens_;
  std::string source_;
};

void write_commands(std::ostream& out, const std::vector<LocalCommand>& cs, const ValuationSpace& space,
                    const detail::Scope& scope, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& c : cs) {
    switch (c.op) {
      case LocalCommand::Op::skip:
        out << pad << "skip;\n";
        break;
      case LocalCommand::Op::assign:
        out << pad << scope.binders[0] << '.' << space.vars()[c.var] << " := " << detail::expr_text(c.value, space, scope)
            << ";\n";
        break;
      case LocalCommand::Op::conditional:
        out << pad << "if " << detail::bool_text(c.condition, space, scope) << " then {\n";
        write_commands(out, c.then_branch, space, scope, indent + 2);
        out << pad << "}";
        if (!c.else_branch.empty()) {
          out << " else {\n";
          write_commands(out, c.else_branch, space, scope, indent + 2);
          out << pad << "}";
        }
        out << '\n';
        break;
    }
  }
}

void write_items(std::ostream& out, const std::vector<GlobalItem>& items, const ValuationSpace& space, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& item : items) {
    switch (item.kind) {
      case GlobalItem::Kind::round: {
        const LocalBlock& b = item.block;
        detail::Scope scope{{b.binder}, b.messages};
        out << pad << "each " << b.binder << " {\n";
        if (b.send) out << pad << "  send " << b.binder << '.' << space.vars()[*b.send] << " receive " << b.messages << ";\n";
        write_commands(out, b.commands, space, scope, indent + 2);
        out << pad << "}\n";
        break;
      }
      case GlobalItem::Kind::check:
        out << pad << "assert { " << to_text(item.assertion, space) << " }\n";
        break;
      case GlobalItem::Kind::loop:
        out << pad << "while " << to_text(item.assertion, space) << "\n"
            << pad << "invariant { " << to_text(item.invariant, space) << " } {\n";
        write_items(out, item.body, space, indent + 2);
        out << pad << "}\n";
        break;
    }
  }
}

void exec(const std::vector<LocalCommand>& cs, const ExprEnv& env, Valuation& val) {
  for (const auto& c : cs) {
    switch (c.op) {
      case LocalCommand::Op::skip:
        break;
      case LocalCommand::Op::assign:
        val[c.var] = eval_expr(c.value, env);
        break;
      case LocalCommand::Op::conditional:
        exec(eval_bool(c.condition, env) ? c.then_branch : c.else_branch, env, val);
        break;
    }
  }
}

}  // namespace

DplProgram parse_dpl(std::string_view text, std::string_view source) {
  return ProgramParser(text, std::string(source)).parse();
}

std::string format_dpl(const DplProgram& p) {
  std::ostringstream out;
  out << "program " << p.name << "\ndomain";
  for (int v : p.space.domain().values()) out << ' ' << v;
  out << "\nvars";
  for (const auto& v : p.space.vars()) out << ' ' << v;
  out << "\nrequire { " << to_text(p.pre, p.space) << " }\n";
  write_items(out, p.items, p.space, 0);
  out << "ensure { " << to_text(p.post, p.space) << " }\n";
  return out.str();
}

Valuation run_block(const LocalBlock& block, const ValuationSpace& space, const Valuation& own,
                    const std::vector<int>& messages) {
  Valuation val = own;
  const ExprEnv env{&space, {&val}, block.send ? &messages : nullptr};
  exec(block.commands, env, val);
  return val;
}

LabeledGraph step_round(const LocalBlock& block, const ValuationSpace& space, const LabeledGraph& g) {
  std::vector<Valuation> pre;
  for (SymbolId s : g.labels) pre.push_back(space.decode(s));
  std::vector<SymbolId> labels(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<int> received;
    if (block.send) {
      std::set<int> values;
      for (NodeId u : g.graph.all_in_neighbors(v)) values.insert(pre[u][*block.send]);
      received.assign(values.begin(), values.end());
    }
    labels[v] = space.encode(run_block(block, space, pre[v], received));
  }
  return LabeledGraph(g.graph, std::move(labels));
}

namespace {

struct Runner {
  const DplProgram& program;
  std::size_t fuel;
  RunOutcome out;
  std::map<const GlobalItem*, Adga> conditions;

  bool run(const std::vector<GlobalItem>& items) {
    for (const auto& item : items) {
      switch (item.kind) {
        case GlobalItem::Kind::round:
          out.state = step_round(item.block, program.space, out.state);
          ++out.rounds;
          break;
        case GlobalItem::Kind::check:
          break;
        case GlobalItem::Kind::loop: {
          auto it = conditions.find(&item);
          if (it == conditions.end())
            it = conditions
                     .emplace(&item, compile_assertion(item.assertion, program.space,
                                                       SymbolSet(std::vector<std::string>(1, "blank"))))
                     .first;
          while (accepts(it->second, with_edges(out.state))) {
            if (fuel == 0) return false;
            --fuel;
            ++out.iterations;
            if (!run(item.body)) return false;
          }
          break;
        }
      }
    }
    return true;
  }

  /// Loop conditions are compiled over a single edge symbol; graphs with
  /// several symbols are read with all edges merged.
  static LabeledGraph with_edges(const LabeledGraph& g) {
    if (g.graph.edge_symbols() == 1) return g;
    std::vector<Edge> e;
    for (const auto& x : g.graph.edges()) e.push_back({0, x.from, x.to});
    return LabeledGraph(Graph(g.node_count(), 1, e), g.labels);
  }
};

}  // namespace

RunOutcome run_program(const DplProgram& p, const LabeledGraph& g, std::size_t fuel) {
  for (SymbolId s : g.labels)
    if (s >= p.space.size()) throw DomainError("graph label outside the program's valuations");
  Runner r{p, fuel, {g, false, 0, 0}, {}};
  r.out.completed = r.run(p.items);
  return r.out;
}

Adga wp_round(const LocalBlock& block, const ValuationSpace& space, const Adga& a) {
  if (!(a.alphabets().nodes == space.symbols())) throw DomainError("wp: automaton is not over the program's valuations");
  SpecBuilder b(a.alphabets());
  std::vector<StateId> first;
  for (SymbolId s = 0; s < space.size(); ++s) {
    first.push_back(b.state(space.symbols().name(s), StateKind::existential));
    b.init(s, first.back());
  }
  std::vector<StateId> copy;
  for (const auto& d : a.states()) copy.push_back(b.state("next." + d.name, d.kind));
  auto shift = [&](int, const StateSet& set) {
    StateSet out;
    set.for_each([&](StateId q) { out.insert(copy[q]); });
    return out;
  };
  for (const auto& r : a.rules()) {
    std::vector<StateId> targets;
    for (StateId t : r.targets) targets.push_back(copy[t]);
    b.rule(copy[r.source], r.guard.map_sets(shift), targets);
  }
  b.acceptance(a.acceptance().map_sets(shift));

  const Domain& dom = space.domain();
  // senders[w]: first-level states whose sent variable has the w-th value.
  std::vector<StateSet> senders(dom.size());
  if (block.send)
    for (SymbolId s = 0; s < space.size(); ++s) senders[dom.index(space.decode(s)[*block.send])].insert(first[s]);

  for (SymbolId s = 0; s < space.size(); ++s) {
    const Valuation own = space.decode(s);
    if (!block.send) {
      b.rule(first[s], Condition::truth(), {copy[a.init(space.encode(run_block(block, space, own, {})))]});
      continue;
    }
    if (dom.size() > 16) throw DomainError("wp: domain too large for message-set enumeration");
    std::map<StateId, std::vector<Condition>> by_target;
    for (std::uint32_t subset = 0; subset < (1u << dom.size()); ++subset) {
      std::vector<int> received;
      std::vector<Condition> parts;
      for (std::size_t w = 0; w < dom.size(); ++w) {
        const Condition heard = Condition::meets(Condition::any_channel, senders[w]);
        if ((subset >> w) & 1) {
          received.push_back(dom.values()[w]);
          parts.push_back(heard);
        } else {
          parts.push_back(!heard);
        }
      }
      const StateId target = copy[a.init(space.encode(run_block(block, space, own, received)))];
      by_target[target].push_back(Condition::all_of(std::move(parts)));
    }
    for (auto& [target, guards] : by_target) b.rule(first[s], Condition::any_of(std::move(guards)), {target});
  }
  return trim(b.build());
}

}  // namespace dga
