// Command-line driver. Exit status: 0 affirmative or verified, 1 negative
// or violation, 2 capped or inexact, 3 and above for errors (4 usage, 5
// automaton class preconditions).

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "dga/automaton_io.hpp"
#include "dga/builtins.hpp"
#include "dga/constructions.hpp"
#include "dga/decision.hpp"
#include "dga/error.hpp"
#include "dga/hoare.hpp"
#include "dga/mso.hpp"

using namespace dga;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kCapped = 2;
constexpr int kError = 3;
constexpr int kUsage = 4;
constexpr int kClass = 5;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string source_name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw Error("cannot write '" + path + "'");
  }
  std::ostream& operator*() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Adga load_adga(const std::string& path) { return parse_adga(slurp(path), source_name(path)); }

/// projection / target <syms...> / map <source> <target>
Projection load_projection(const std::string& path, const SymbolSet& source) {
  const std::string text = slurp(path);
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  std::optional<SymbolSet> target;
  std::vector<std::optional<SymbolId>> mapping(source.size());
  bool header = false;
  auto fail = [&](const std::string& what) { throw ParseError(source_name(path), number, what); };
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> t{std::istream_iterator<std::string>(words), std::istream_iterator<std::string>()};
    if (t.empty()) continue;
    if (!header) {
      if (t != std::vector<std::string>{"projection"}) fail("expected 'projection'");
      header = true;
    } else if (t[0] == "target") {
      if (target) fail("duplicate target line");
      target = SymbolSet(std::vector<std::string>(t.begin() + 1, t.end()));
    } else if (t[0] == "map" && t.size() == 3) {
      if (!target) fail("'map' before 'target'");
      const auto from = source.find(t[1]);
      const auto to = target->find(t[2]);
      if (!from) fail("unknown source label '" + t[1] + "'");
      if (!to) fail("unknown target label '" + t[2] + "'");
      if (mapping[*from]) fail("label '" + t[1] + "' mapped twice");
      mapping[*from] = *to;
    } else {
      fail("unexpected '" + t[0] + "'");
    }
  }
  if (!target) fail("missing target line");
  std::vector<SymbolId> m;
  for (SymbolId s = 0; s < source.size(); ++s) {
    if (!mapping[s]) throw ParseError(source_name(path), 0, "label '" + source.name(s) + "' is not mapped");
    m.push_back(*mapping[s]);
  }
  return Projection(source, *target, m);
}

EnumerationMode parse_mode(const std::string& m) {
  return m == "undirected" ? EnumerationMode::connected_undirected : EnumerationMode::all_directed;
}

bool has_universal(const Adga& a) {
  for (const auto& s : a.states())
    if (s.kind == StateKind::universal) return true;
  return false;
}

struct SearchFlags {
  std::string mode = "all";
  std::size_t cap = 6;
  unsigned jobs = 1;
  bool no_dedup = false;
  bool no_self_loops = false;
  bool probe = false;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "Graph class: all directed graphs or connected undirected graphs")
        ->check(CLI::IsMember({"all", "undirected"}));
    app->add_option("--cap", cap, "Largest node count searched")->check(CLI::Range(1, 12));
    app->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    app->add_flag("--no-dedup", no_dedup, "Visit every labeled graph instead of one per isomorphism class");
    app->add_flag("--no-self-loops", no_self_loops, "Exclude self-loops");
  }

  SearchOptions options() const {
    SearchOptions o;
    o.mode = parse_mode(mode);
    o.n_cap = cap;
    o.dedup = !no_dedup;
    o.self_loops = !no_self_loops && o.mode == EnumerationMode::all_directed;
    o.jobs = jobs;
    o.bounded_probe = probe;
    return o;
  }
};

/// Language equality of a with its double complement on every graph with
/// at most two nodes, for every registry automaton; format round trips.
int self_test(std::ostream& out) {
  int failures = 0;
  for (const auto& [name, a] : registry()) {
    const Adga back = complement(complement(a));
    bool same = true;
    for_each_labeled_graph(a.alphabets().nodes.size(), a.alphabets().edges.size(), 2, EnumerationOptions{},
                           [&](const LabeledGraph& g) {
                             same = accepts(a, g) == accepts(back, g);
                             return same;
                           });
    const bool round_trip = format_adga(parse_adga(format_adga(a))) == format_adga(a);
    out << (same && round_trip ? "ok   " : "FAIL ") << name << '\n';
    failures += same && round_trip ? 0 : 1;
  }
  return failures == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating distributed graph automata toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--output", out_path, "Write the primary output to this file instead of stdout");

  std::string a1, a2, graph, op, text_file;
  SearchFlags search;
  std::size_t fuel = 100;
  std::size_t max_listed = 12;

  auto* accepts_cmd = app.add_subcommand("accepts", "Decide whether an automaton accepts a graph");
  accepts_cmd->add_option("adga", a1, "Automaton file ('-' for stdin)")->required();
  accepts_cmd->add_option("graph", graph, "Graph file ('-' for stdin)")->required();

  auto* construct_cmd = app.add_subcommand("construct", "Build an automaton from others");
  construct_cmd->add_option("op", op, "complement | union | intersect | and | or | project | trim | totalize")
      ->required()
      ->check(CLI::IsMember({"complement", "union", "intersect", "and", "or", "project", "trim", "totalize"}));
  construct_cmd->add_option("adga", a1, "Automaton file")->required();
  construct_cmd->add_option("second", a2, "Second automaton, or projection file for 'project'");
  construct_cmd->add_option("--max-listed", max_listed, "List accepting sets only up to this many permanent states");

  auto* compile_cmd = app.add_subcommand("compile-mso", "Compile an MSO sentence to an automaton");
  compile_cmd->add_option("mso", text_file, "Formula file")->required();
  compile_cmd->add_option("--max-listed", max_listed, "List accepting sets only up to this many permanent states");

  auto* encode_cmd = app.add_subcommand("encode-mso", "Translate an automaton to an equivalent MSO sentence");
  encode_cmd->add_option("adga", a1, "Automaton file")->required();

  auto* eval_cmd = app.add_subcommand("eval-mso", "Evaluate an MSO sentence on a graph");
  eval_cmd->add_option("mso", text_file, "Formula file")->required();
  eval_cmd->add_option("graph", graph, "Graph file")->required();

  auto* empty_cmd = app.add_subcommand("emptiness", "Search for the smallest accepted graph");
  empty_cmd->add_option("adga", a1, "Automaton file")->required();
  search.attach(empty_cmd);
  empty_cmd->add_flag("--probe", search.probe, "Allow alternating automata (never exact)");

  auto* incl_cmd = app.add_subcommand("inclusion", "Decide L(a1) within L(a2) for deterministic automata");
  incl_cmd->add_option("a1", a1, "First automaton")->required();
  incl_cmd->add_option("a2", a2, "Second automaton")->required();
  search.attach(incl_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Run a program on a graph");
  sim_cmd->add_option("dpl", text_file, "Program file")->required();
  sim_cmd->add_option("graph", graph, "Graph labeled by valuations")->required();
  sim_cmd->add_option("--fuel", fuel, "Loop iterations allowed");

  auto* verify_cmd = app.add_subcommand("verify", "Check a program's annotations");
  verify_cmd->add_option("dpl", text_file, "Program file")->required();
  std::size_t verify_cap = 4;
  unsigned verify_jobs = 1;
  bool strict = false;
  verify_cmd->add_option("--cap", verify_cap, "Largest node count searched")->check(CLI::Range(1, 12));
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::Range(1, 256));
  verify_cmd->add_flag("--strict", strict, "Exit 2 when some condition holds only up to the cap");

  auto* examples_cmd = app.add_subcommand("examples", "Emit a built-in automaton");
  std::string example;
  examples_cmd->add_option("name", example, "Name with optional parameters, e.g. order_ge:3");
  bool list = false;
  examples_cmd->add_flag("--list", list, "List the available names");

  auto* self_cmd = app.add_subcommand("self-test", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    Output out(out_path);
    if (accepts_cmd->parsed()) {
      const Adga a = load_adga(a1);
      const LabeledGraph g = parse_graph(slurp(graph), a.alphabets(), source_name(graph));
      const bool yes = accepts(a, g);
      *out << (yes ? "ACCEPT" : "REJECT") << '\n';
      return yes ? kYes : kNo;
    }
    if (construct_cmd->parsed()) {
      const Adga a = load_adga(a1);
      auto second = [&]() {
        if (a2.empty()) throw Error("'" + op + "' needs a second argument");
        return load_adga(a2);
      };
      std::optional<Adga> r;
      if (op == "complement") r = complement(a);
      if (op == "trim") r = trim(a);
      if (op == "totalize") r = totalize(a);
      if (op == "union") r = union_of(a, second());
      if (op == "and") r = product(a, second(), Combine::conjunction);
      if (op == "or") r = product(a, second(), Combine::disjunction);
      if (op == "intersect") {
        const Adga b = second();
        r = has_universal(a) || has_universal(b) ? intersect_adga(a, b) : product(a, b, Combine::conjunction);
      }
      if (op == "project") {
        if (a2.empty()) throw Error("'project' needs a projection file");
        r = project(a, load_projection(a2, a.alphabets().nodes));
      }
      *out << format_adga(*r, max_listed);
      return kYes;
    }
    if (compile_cmd->parsed()) {
      const auto [f, alpha] = parse_mso_file(slurp(text_file), source_name(text_file));
      *out << format_adga(compile_mso(f, alpha), max_listed);
      return kYes;
    }
    if (encode_cmd->parsed()) {
      const Adga a = load_adga(a1);
      *out << format_mso_file(mso_of_adga(a), a.alphabets());
      return kYes;
    }
    if (eval_cmd->parsed()) {
      const auto [f, alpha] = parse_mso_file(slurp(text_file), source_name(text_file));
      const LabeledGraph g = parse_graph(slurp(graph), alpha, source_name(graph));
      const bool yes = eval_mso(f, g);
      *out << (yes ? "TRUE" : "FALSE") << '\n';
      return yes ? kYes : kNo;
    }
    if (empty_cmd->parsed()) {
      const Adga a = load_adga(a1);
      const SearchOutcome r = find_member(a, search.options());
      if (r.found()) {
        *out << "NONEMPTY nodes=" << r.counterexample->node_count() << '\n'
             << format_graph(*r.counterexample, a.alphabets());
        return kNo;
      }
      *out << "EMPTY exact=" << (r.exact ? "true" : "false") << " checked_up_to=" << r.n_checked << '\n';
      return r.exact ? kYes : kCapped;
    }
    if (incl_cmd->parsed()) {
      const Adga x = load_adga(a1);
      const Adga y = load_adga(a2);
      const InclusionResult r = inclusion_ddga(x, y, search.options());
      if (!r.holds) {
        *out << "VIOLATION nodes=" << r.violation->node_count() << '\n' << format_graph(*r.violation, x.alphabets());
        return kNo;
      }
      *out << "HOLDS exact=" << (r.exact ? "true" : "false") << " checked_up_to=" << r.n_checked << '\n';
      return r.exact ? kYes : kCapped;
    }
    if (sim_cmd->parsed()) {
      const DplProgram p = parse_dpl(slurp(text_file), source_name(text_file));
      const Alphabets alpha{p.space.symbols(), SymbolSet({"blank"})};
      const LabeledGraph g = parse_graph(slurp(graph), alpha, source_name(graph));
      const RunOutcome r = run_program(p, g, fuel);
      *out << "# rounds=" << r.rounds << " iterations=" << r.iterations
           << (r.completed ? " terminated" : " fuel exhausted") << '\n'
           << format_graph(r.state, alpha);
      return r.completed ? kYes : kCapped;
    }
    if (verify_cmd->parsed()) {
      const DplProgram p = parse_dpl(slurp(text_file), source_name(text_file));
      CheckOptions o;
      o.n_cap = verify_cap;
      o.jobs = verify_jobs;
      const VcReport r = check(p, o);
      *out << format_report(p, r);
      if (!r.verified()) return kNo;
      return strict && !r.exact() ? kCapped : kYes;
    }
    if (examples_cmd->parsed()) {
      if (list || example.empty()) {
        for (const auto& n : builtin_names()) *out << n << '\n';
        return kYes;
      }
      *out << format_adga(builtin(example));
      return kYes;
    }
    if (self_cmd->parsed()) return self_test(*out);
  } catch (const ClassError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kClass;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kUsage;
}
