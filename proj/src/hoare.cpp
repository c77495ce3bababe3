#include "dga/hoare.hpp"

#include <algorithm>
#include <sstream>

#include "dga/decision.hpp"

namespace dga {

const char* to_string(VcKind k) {
  switch (k) {
    case VcKind::entry:
      return "entry";
    case VcKind::preservation:
      return "preservation";
    case VcKind::exit:
      return "exit";
    case VcKind::weaken:
      return "weaken";
  }
  return "?";
}

namespace {

const SymbolSet kEdges(std::vector<std::string>{"blank"});

struct Requirement {
  Assertion goal;
  std::vector<LocalBlock> rounds;
  Adga automaton;
};

class Generator {
 public:
  explicit Generator(const DplProgram& p) : p_(p) {}

  std::vector<Vc> run() {
    const Requirement last = items(p_.items, at(p_.post));
    emit(VcKind::entry, p_.pre_line, p_.pre, last);
    std::reverse(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  Requirement at(const Assertion& a) const { return {a, {}, compile_assertion(a, p_.space, kEdges)}; }

  void emit(VcKind kind, std::size_t line, const Assertion& assumption, const Requirement& r) {
    out_.push_back(Vc{kind, line, assumption, r.rounds, r.goal, compile_assertion(assumption, p_.space, kEdges),
                      r.automaton});
  }

  Requirement items(const std::vector<GlobalItem>& list, Requirement r) {
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      const GlobalItem& item = *it;
      switch (item.kind) {
        case GlobalItem::Kind::round:
          r.rounds.insert(r.rounds.begin(), item.block);
          r.automaton = wp_round(item.block, p_.space, r.automaton);
          break;
        case GlobalItem::Kind::check:
          emit(VcKind::weaken, item.line, item.assertion, r);
          r = at(item.assertion);
          break;
        case GlobalItem::Kind::loop: {
          emit(VcKind::exit, item.line, item.invariant && !item.assertion, r);
          const Requirement body = items(item.body, at(item.invariant));
          emit(VcKind::preservation, item.line, item.invariant && item.assertion, body);
          r = at(item.invariant);
          break;
        }
      }
    }
    return r;
  }

  const DplProgram& p_;
  std::vector<Vc> out_;
};

}  // namespace

std::vector<Vc> vcgen(const DplProgram& p) { return Generator(p).run(); }

bool replays(const Vc& vc, const ValuationSpace& space, const LabeledGraph& g) {
  if (!eval_assertion(vc.assumption, space, g)) return false;
  LabeledGraph state = g;
  for (const auto& round : vc.rounds) state = step_round(round, space, state);
  return !eval_assertion(vc.goal, space, state);
}

bool VcReport::verified() const {
  return std::all_of(results.begin(), results.end(), [](const VcResult& r) { return r.holds; });
}

bool VcReport::exact() const {
  return std::all_of(results.begin(), results.end(), [](const VcResult& r) { return r.exact; });
}

VcResult discharge(const Vc& vc, const CheckOptions& opts) {
  SearchOptions s;
  s.mode = EnumerationMode::connected_undirected;
  s.n_cap = opts.n_cap;
  s.dedup = opts.dedup;
  s.self_loops = false;
  s.jobs = opts.jobs;
  const InclusionResult inc = inclusion_ddga(vc.lhs, vc.rhs, s);
  return {inc.holds, inc.exact, inc.n_checked, inc.violation};
}

VcReport check(const DplProgram& p, const CheckOptions& opts) {
  VcReport r;
  r.vcs = vcgen(p);
  for (const auto& vc : r.vcs) r.results.push_back(discharge(vc, opts));
  return r;
}

std::string format_report(const DplProgram& p, const VcReport& r) {
  const Alphabets alpha{p.space.symbols(), kEdges};
  std::ostringstream out;
  for (std::size_t i = 0; i < r.vcs.size(); ++i) {
    const Vc& vc = r.vcs[i];
    const VcResult& res = r.results[i];
    out << "VC " << to_string(vc.kind) << " L" << vc.line << ": ";
    if (res.holds) {
      out << "HOLDS exact=" << (res.exact ? "true" : "false") << '\n';
      continue;
    }
    out << "VIOLATION\n";
    if (!res.violation) continue;
    out << "# holds here: " << to_text(vc.assumption, p.space) << '\n';
    LabeledGraph state = *res.violation;
    for (std::size_t k = 0; k < vc.rounds.size(); ++k) {
      state = step_round(vc.rounds[k], p.space, state);
      out << "# after round " << k + 1 << ":";
      for (SymbolId l : state.labels) out << ' ' << p.space.symbols().name(l);
      out << '\n';
    }
    out << "# fails " << (vc.rounds.empty() ? "here" : "afterwards") << ": " << to_text(vc.goal, p.space) << '\n';
    out << format_graph(*res.violation, alpha);
  }
  return out.str();
}

}  // namespace dga
