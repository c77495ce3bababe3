#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dga/automaton_io.hpp"
#include "dga/builtins.hpp"
#include "dga/constructions.hpp"
#include "dga/decision.hpp"
#include "dga/error.hpp"
#include "dga/hoare.hpp"
#include "dga/mso.hpp"

namespace py = pybind11;
using namespace dga;

namespace {

EnumerationMode mode_of(const std::string& m) {
  if (m == "all") return EnumerationMode::all_directed;
  if (m == "undirected") return EnumerationMode::connected_undirected;
  throw DomainError("mode must be 'all' or 'undirected'");
}

SearchOptions search(const std::string& mode, std::size_t cap, unsigned jobs) {
  SearchOptions o;
  o.mode = mode_of(mode);
  o.n_cap = cap;
  o.jobs = jobs;
  o.self_loops = o.mode == EnumerationMode::all_directed;
  return o;
}

}  // namespace

PYBIND11_MODULE(pydga, m) {
  m.doc() = "Alternating distributed graph automata: acceptance, constructions, MSO, decisions and verification";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ClassError>(m, "ClassError", base.ptr());

  py::class_<LabeledGraph>(m, "LabeledGraph")
      .def_property_readonly("node_count", &LabeledGraph::node_count)
      .def_readonly("labels", &LabeledGraph::labels)
      .def_property_readonly("edges",
                             [](const LabeledGraph& g) {
                               std::vector<std::tuple<SymbolId, NodeId, NodeId>> out;
                               for (const auto& e : g.graph.edges()) out.emplace_back(e.symbol, e.from, e.to);
                               return out;
                             })
      .def("__eq__", [](const LabeledGraph& a, const LabeledGraph& b) { return a == b; });

  py::class_<Adga>(m, "Adga")
      .def_static("parse", [](const std::string& text) { return parse_adga(text); }, py::arg("text"))
      .def_static("builtin", [](const std::string& spec) { return builtin(spec); }, py::arg("spec"),
                  "Registry automaton such as 'color3' or 'order_ge:3'")
      .def("to_text", [](const Adga& a) { return format_adga(a); })
      .def_property_readonly("state_count", &Adga::state_count)
      .def_property_readonly("length", &Adga::length)
      .def_property_readonly("node_alphabet", [](const Adga& a) { return a.alphabets().nodes.names(); })
      .def_property_readonly("edge_alphabet", [](const Adga& a) { return a.alphabets().edges.names(); })
      .def_property_readonly("automaton_class", [](const Adga& a) { return to_string(classify(a)); })
      .def("parse_graph", [](const Adga& a, const std::string& text) { return parse_graph(text, a.alphabets()); },
           py::arg("text"), "Parse a graph over this automaton's alphabets")
      .def("format_graph", [](const Adga& a, const LabeledGraph& g) { return format_graph(g, a.alphabets()); })
      .def("accepts", [](const Adga& a, const LabeledGraph& g) { return accepts(a, g); }, py::arg("graph"));

  m.def("builtin_names", &builtin_names);
  m.def("complement", &complement);
  m.def("union", &union_of);
  m.def("intersection", [](const Adga& a, const Adga& b) { return product(a, b, Combine::conjunction); },
        "Product intersection of automata without universal states");
  m.def("intersect_alternating", &intersect_adga);
  m.def("disjunction", [](const Adga& a, const Adga& b) { return product(a, b, Combine::disjunction); },
        "Product union of deterministic automata");

  m.def(
      "compile_mso",
      [](const std::string& text) {
        const auto [f, alpha] = parse_mso_file(text);
        return compile_mso(f, alpha);
      },
      py::arg("mso_file_text"));
  m.def(
      "eval_mso",
      [](const std::string& text, const std::string& graph) {
        const auto [f, alpha] = parse_mso_file(text);
        return eval_mso(f, parse_graph(graph, alpha));
      },
      py::arg("mso_file_text"), py::arg("graph_text"));
  m.def(
      "encode_mso", [](const Adga& a) { return format_mso_file(mso_of_adga(a), a.alphabets()); }, py::arg("adga"));

  m.def(
      "find_member",
      [](const Adga& a, const std::string& mode, std::size_t cap, unsigned jobs) {
        const SearchOutcome r = find_member(a, search(mode, cap, jobs));
        return py::make_tuple(r.counterexample, r.n_checked, r.exact);
      },
      py::arg("adga"), py::arg("mode") = "all", py::arg("cap") = 6, py::arg("jobs") = 1,
      "Returns (smallest accepted graph or None, largest node count checked, exact)");
  m.def(
      "inclusion",
      [](const Adga& a, const Adga& b, const std::string& mode, std::size_t cap, unsigned jobs) {
        const InclusionResult r = inclusion_ddga(a, b, search(mode, cap, jobs));
        return py::make_tuple(r.holds, r.violation, r.exact);
      },
      py::arg("a1"), py::arg("a2"), py::arg("mode") = "all", py::arg("cap") = 6, py::arg("jobs") = 1,
      "Returns (holds, violating graph or None, exact)");

  py::class_<DplProgram>(m, "Program")
      .def_static("parse", [](const std::string& text) { return parse_dpl(text); }, py::arg("text"))
      .def("to_text", [](const DplProgram& p) { return format_dpl(p); })
      .def_readonly("name", &DplProgram::name)
      .def_property_readonly("labels", [](const DplProgram& p) { return p.space.symbols().names(); })
      .def(
          "parse_graph",
          [](const DplProgram& p, const std::string& text) {
            return parse_graph(text, Alphabets{p.space.symbols(), SymbolSet({"blank"})});
          },
          py::arg("text"))
      .def(
          "run",
          [](const DplProgram& p, const LabeledGraph& g, std::size_t fuel) {
            const RunOutcome r = run_program(p, g, fuel);
            std::vector<std::vector<int>> vals;
            for (SymbolId l : r.state.labels) vals.push_back(p.space.decode(l));
            return py::make_tuple(vals, r.completed);
          },
          py::arg("graph"), py::arg("fuel") = 100, "Returns (final valuations per node, terminated)")
      .def(
          "verify",
          [](const DplProgram& p, std::size_t cap, unsigned jobs) {
            CheckOptions o;
            o.n_cap = cap;
            o.jobs = jobs;
            const VcReport r = check(p, o);
            return py::make_tuple(r.verified(), format_report(p, r));
          },
          py::arg("cap") = 4, py::arg("jobs") = 1, "Returns (all conditions hold, report text)");
}
