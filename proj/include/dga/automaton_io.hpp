#pragma once

#include <string>
#include <string_view>

#include "dga/automaton.hpp"

namespace dga {

/// Automaton text format:
///
///   adga
///   node_alphabet <syms...>
///   edge_alphabet <syms...>
///   state <name> <E|A|P>
///   init <label> -> <state>
///   rule <state> [<guard>] -> { <states...> }
///   accept { <permanent states...> }
///   accept_if <condition>
///
/// Guards use `contains(γ,q)`, `!`, `&`, `|`, parentheses, `true` and
/// `false`. Acceptance is either a list of `accept` lines or a single
/// `accept_if` line whose atoms are `has(q)`.
Adga parse_adga(std::string_view text, std::string_view source = {});
AdgaSpec parse_adga_spec(std::string_view text, std::string_view source = {});

/// Emits `accept` lines when Q_P has at most `max_listed` states, and an
/// `accept_if` line otherwise.
std::string format_adga(const Adga& a, std::size_t max_listed = 12);

std::string format_guard(const Condition& guard, const Adga& a);
std::string format_acceptance(const Condition& acceptance, const Adga& a);

}  // namespace dga
