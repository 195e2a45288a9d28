#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "detlab/automaton.hpp"
#include "detlab/weighted_automaton.hpp"

namespace detlab {

// Line-oriented automaton format, '#' starts a comment:
//
//   fsa <n_states> <bool|tropical>
//   alphabet a b c
//   init <state> [weight]
//   final <state> [weight]
//   trans <src> <label|EPS> [weight] <dst>
//
// Weights appear iff the semiring is not bool. Directives may come in any
// order. Without an `fsa` line the automaton is unweighted and the state count
// is one past the largest state mentioned; without `alphabet` lines the
// alphabet is inferred from transition labels.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using AnyAutomaton = std::variant<Automaton, TropicalAutomaton>;

AnyAutomaton parse_automaton(std::string_view text);

/// Parses and requires the unweighted (bool) flavor.
Automaton parse_unweighted(std::string_view text);
TropicalAutomaton parse_tropical(std::string_view text);

/// Canonical text: header, alphabet, init, final, then transitions ordered by
/// (src, label, dst) with EPS after every symbol.
std::string serialize_automaton(const Automaton& a);
std::string serialize_automaton(const TropicalAutomaton& a);
std::string serialize_automaton(const AnyAutomaton& a);

}  // namespace detlab
