#include "dga/decision.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dga/constructions.hpp"
#include "dga/error.hpp"

namespace dga {

std::string EmptinessBound::to_string() const { return value ? value->str() : std::string("overflow"); }

EmptinessBound emptiness_bound(const Adga& a, EnumerationMode mode, std::size_t max_bits) {
  if (classify(a) == AutomatonClass::adga)
    throw ClassError("emptiness bound requires a nondeterministic automaton (no universal states)");
  const std::size_t q = a.state_count();
  const std::size_t gamma = a.alphabets().edges.size();
  const std::size_t exponent = static_cast<std::size_t>(a.length()) + 1;
  const double base_bits =
      std::log2(static_cast<double>(q)) + (mode == EnumerationMode::connected_undirected ? double(gamma * q) : 0.0);
  if (base_bits * static_cast<double>(exponent) > static_cast<double>(max_bits)) return {};
  BigInt base = q;
  if (mode == EnumerationMode::connected_undirected) base <<= static_cast<unsigned>(gamma * q);
  return {boost::multiprecision::pow(base, static_cast<unsigned>(exponent))};
}

namespace {

/// Index of the first accepted graph in `batch`, or batch.size().
std::size_t first_accepted(const Adga& a, const std::vector<LabeledGraph>& batch, unsigned jobs) {
  if (jobs <= 1 || batch.size() < 2 * jobs) {
    for (std::size_t i = 0; i < batch.size(); ++i)
      if (accepts(a, batch[i])) return i;
    return batch.size();
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{batch.size()};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < batch.size() && i < best.load(); i = next++) {
        if (!accepts(a, batch[i])) continue;
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    });
  for (auto& t : workers) t.join();
  return best.load();
}

}  // namespace

SearchOutcome find_member(const Adga& a, const SearchOptions& opts) {
  if (opts.n_cap < 1) throw DomainError("n_cap must be at least 1");
  std::optional<EmptinessBound> bound;
  if (classify(a) == AutomatonClass::adga) {
    if (!opts.bounded_probe)
      throw ClassError(
          "emptiness of alternating automata is undecidable; pass the bounded probe option for a search without "
          "exactness");
  } else {
    bound = emptiness_bound(a, opts.mode);
  }
  std::size_t limit = opts.n_cap;
  if (bound && !bound->overflow() && *bound->value < BigInt(limit)) limit = static_cast<std::size_t>(*bound->value);

  const EnumerationOptions enum_opts{opts.mode, opts.dedup, opts.self_loops};
  const std::size_t batch_size = opts.jobs <= 1 ? 1 : 4096;
  SearchOutcome out;
  for (std::size_t n = 1; n <= limit; ++n) {
    std::vector<LabeledGraph> batch;
    auto flush = [&] {
      const std::size_t i = first_accepted(a, batch, opts.jobs);
      if (i < batch.size()) out.counterexample = batch[i];
      batch.clear();
      return !out.counterexample;
    };
    for_each_labeled_graph_of_order(a.alphabets().nodes.size(), a.alphabets().edges.size(), n, enum_opts,
                                    [&](const LabeledGraph& g) {
                                      batch.push_back(g);
                                      return batch.size() < batch_size || flush();
                                    });
    if (!out.counterexample) flush();
    out.n_checked = n;
    if (out.counterexample) return out;
  }
  out.exact = bound && bound->reached_by(out.n_checked);
  return out;
}

InclusionResult inclusion_ddga(const Adga& a1, const Adga& a2, const SearchOptions& opts) {
  if (!(a1.alphabets() == a2.alphabets())) throw DomainError("inclusion: automata have different alphabets");
  if (!is_syntactically_deterministic(a1) || !is_syntactically_deterministic(a2))
    throw ClassError("inclusion is decided for deterministic automata only");
  const SearchOutcome s = find_member(product(a1, complement(a2), Combine::conjunction), opts);
  InclusionResult r;
  r.holds = !s.found();
  r.exact = s.exact;
  r.n_checked = s.n_checked;
  r.violation = s.counterexample;
  return r;
}

EquivalenceResult equivalence_ddga(const Adga& a1, const Adga& a2, const SearchOptions& opts) {
  return {inclusion_ddga(a1, a2, opts), inclusion_ddga(a2, a1, opts)};
}

}  // namespace dga
