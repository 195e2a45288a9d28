#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "detlab/bitset.hpp"
#include "detlab/bool_matrix.hpp"

namespace detlab {

using LabelId = std::uint32_t;
inline constexpr LabelId kEpsilon = std::numeric_limits<LabelId>::max();
inline constexpr std::string_view kEpsilonToken = "EPS";

/// A word as a sequence of label ids into an automaton's alphabet.
using Word = std::vector<LabelId>;

struct Transition {
  StateId src;
  LabelId label;
  StateId dst;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Transition with a textual label, used to build automata by hand.
struct Edge {
  StateId src;
  std::string label;  // kEpsilonToken for an epsilon move
  StateId dst;
};

/// True for tokens usable as alphabet symbols: non-empty, no whitespace or
/// '#', and not the reserved epsilon token.
bool is_valid_symbol(std::string_view token);

/// Unweighted finite-state automaton over dense state indices 0..n-1.
///
/// The alphabet is kept sorted and duplicate-free, so label ids follow
/// lexicographic symbol order. Transitions are collapsed to a set and sorted by
/// (src, label, dst) with epsilon ordered after every symbol. Instances are
/// immutable once built.
class Automaton {
 public:
  Automaton() = default;

  /// `transitions` refer to labels by position in `alphabet` as given; the
  /// alphabet is then sorted and labels remapped. Throws std::invalid_argument
  /// on out-of-range states or labels and on invalid symbols.
  Automaton(std::vector<std::string> alphabet, std::size_t num_states, const std::vector<StateId>& initial,
            const std::vector<StateId>& final_states, std::vector<Transition> transitions);

  /// Convenience constructor; the alphabet is every non-epsilon label in
  /// `edges` plus `extra_alphabet`.
  static Automaton from_edges(std::size_t num_states, const std::vector<StateId>& initial,
                              const std::vector<StateId>& final_states, const std::vector<Edge>& edges,
                              std::vector<std::string> extra_alphabet = {});

  std::size_t num_states() const { return num_states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t sigma() const { return alphabet_.size(); }
  std::optional<LabelId> label_of(std::string_view symbol) const;
  std::string_view label_name(LabelId label) const;

  /// Converts symbols to label ids; throws std::invalid_argument on a symbol
  /// outside the alphabet.
  Word encode(const std::vector<std::string>& symbols) const;

  const BitSet& initial() const { return initial_; }
  const BitSet& final_states() const { return final_; }
  bool is_initial(StateId q) const { return initial_.test(q); }
  bool is_final(StateId q) const { return final_.test(q); }

  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Destinations of q under `label` (kEpsilon allowed), ascending.
  std::span<const StateId> successors(StateId q, LabelId label) const;
  bool has_epsilon() const { return has_epsilon_; }

  friend bool operator==(const Automaton& a, const Automaton& b) {
    return a.num_states_ == b.num_states_ && a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ &&
           a.final_ == b.final_ && a.transitions_ == b.transitions_;
  }

 private:
  std::size_t slot(StateId q, LabelId label) const {
    return q * (alphabet_.size() + 1) + (label == kEpsilon ? alphabet_.size() : label);
  }

  std::size_t num_states_ = 0;
  std::vector<std::string> alphabet_;
  BitSet initial_;
  BitSet final_;
  std::vector<Transition> transitions_;
  bool has_epsilon_ = false;
  // CSR index over transitions_: destinations for slot s are dsts_[offsets_[s] .. offsets_[s+1]).
  std::vector<std::size_t> offsets_;
  std::vector<StateId> dsts_;
};

/// Epsilon removal by closure: a state gets every symbol transition of the
/// states in its epsilon-closure, is final iff its closure meets F, and the
/// initial set is replaced by its closure. Epsilon-free input comes back
/// unchanged.
Automaton remove_epsilon(const Automaton& a);

/// One matrix per alphabet symbol, indexed by label id. Entry (i, j) is set
/// iff (q_i, a, q_j) is a transition. Throws std::invalid_argument if `a`
/// has epsilon transitions.
std::vector<BoolMatrix> transition_matrices(const Automaton& a);

/// Deterministic in the strict sense: one initial state, no epsilon, at most
/// one successor per (state, symbol).
bool is_deterministic(const Automaton& a);

/// States reachable from the initial set.
BitSet accessible_states(const Automaton& a);

/// Structural isomorphism of two deterministic automata whose states are all
/// reachable. Returns false when either input is not deterministic.
bool isomorphic(const Automaton& a, const Automaton& b);

}  // namespace detlab
