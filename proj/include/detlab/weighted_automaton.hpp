#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detlab/automaton.hpp"
#include "detlab/semifield.hpp"

namespace detlab {

template <Semifield K>
struct WeightedTransition {
  StateId src;
  LabelId label;
  StateId dst;
  typename K::value_type weight;
};

/// Weighted automaton over a commutative semifield K. At most one transition
/// per (src, label, dst); zero weights are dropped on construction since they
/// denote absent transitions. Initial and final weights are sparse, sorted by
/// state.
template <Semifield K>
class WeightedAutomaton {
 public:
  using semifield = K;
  using Weight = typename K::value_type;
  using Entry = std::pair<StateId, Weight>;

  WeightedAutomaton() = default;

  /// Labels in `transitions` index into `alphabet` as given. Throws
  /// std::invalid_argument on unknown states or labels, duplicate transition
  /// triples, and duplicate initial/final entries.
  WeightedAutomaton(std::vector<std::string> alphabet, std::size_t num_states, std::vector<Entry> initial,
                    std::vector<Entry> final_weights, std::vector<WeightedTransition<K>> transitions)
      : num_states_(num_states) {
    for (const auto& s : alphabet)
      if (!is_valid_symbol(s)) throw std::invalid_argument("invalid alphabet symbol '" + s + "'");
    std::vector<std::string> sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<LabelId> remap(alphabet.size());
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      remap[i] = static_cast<LabelId>(std::lower_bound(sorted.begin(), sorted.end(), alphabet[i]) - sorted.begin());
    alphabet_ = std::move(sorted);

    auto check_state = [&](StateId q) {
      if (q >= num_states_) throw std::invalid_argument("unknown state " + std::to_string(q));
    };
    initial_ = normalize_entries(std::move(initial), check_state, "initial");
    final_ = normalize_entries(std::move(final_weights), check_state, "final");

    for (auto& t : transitions) {
      check_state(t.src);
      check_state(t.dst);
      if (t.label != kEpsilon) {
        if (t.label >= remap.size()) throw std::invalid_argument("transition label outside the alphabet");
        t.label = remap[t.label];
      } else {
        has_epsilon_ = true;
      }
    }
    std::erase_if(transitions, [](const auto& t) { return K::is_zero(t.weight); });
    std::sort(transitions.begin(), transitions.end(), [](const auto& x, const auto& y) {
      return std::tie(x.src, x.label, x.dst) < std::tie(y.src, y.label, y.dst);
    });
    for (std::size_t i = 1; i < transitions.size(); ++i) {
      const auto& p = transitions[i - 1];
      const auto& t = transitions[i];
      if (p.src == t.src && p.label == t.label && p.dst == t.dst)
        throw std::invalid_argument("duplicate weighted transition " + std::to_string(t.src) + " -> " +
                                    std::to_string(t.dst));
    }
    transitions_ = std::move(transitions);

    offsets_.assign(num_states_ * (alphabet_.size() + 1) + 1, 0);
    for (const auto& t : transitions_) ++offsets_[slot(t.src, t.label) + 1];
    for (std::size_t s = 1; s < offsets_.size(); ++s) offsets_[s] += offsets_[s - 1];
  }

  std::size_t num_states() const { return num_states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t sigma() const { return alphabet_.size(); }
  std::optional<LabelId> label_of(std::string_view symbol) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), symbol);
    if (it == alphabet_.end() || *it != symbol) return std::nullopt;
    return static_cast<LabelId>(it - alphabet_.begin());
  }
  std::string_view label_name(LabelId label) const {
    return label == kEpsilon ? kEpsilonToken : std::string_view(alphabet_.at(label));
  }

  const std::vector<Entry>& initial_weights() const { return initial_; }
  const std::vector<Entry>& final_weights() const { return final_; }
  Weight initial_weight(StateId q) const { return lookup(initial_, q); }
  Weight final_weight(StateId q) const { return lookup(final_, q); }

  const std::vector<WeightedTransition<K>>& transitions() const { return transitions_; }
  std::span<const WeightedTransition<K>> outgoing(StateId q, LabelId label) const {
    const std::size_t s = slot(q, label);
    return std::span<const WeightedTransition<K>>(transitions_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
  }
  bool has_epsilon() const { return has_epsilon_; }

  friend bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    auto entries_eq = [](const std::vector<Entry>& x, const std::vector<Entry>& y) {
      return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const Entry& e, const Entry& f) {
        return e.first == f.first && K::equal(e.second, f.second);
      });
    };
    auto trans_eq = [](const auto& x, const auto& y) {
      return x.src == y.src && x.label == y.label && x.dst == y.dst && K::equal(x.weight, y.weight);
    };
    return a.num_states_ == b.num_states_ && a.alphabet_ == b.alphabet_ && entries_eq(a.initial_, b.initial_) &&
           entries_eq(a.final_, b.final_) &&
           std::equal(a.transitions_.begin(), a.transitions_.end(), b.transitions_.begin(), b.transitions_.end(),
                      trans_eq);
  }

 private:
  template <class Check>
  static std::vector<Entry> normalize_entries(std::vector<Entry> entries, Check check, const char* what) {
    std::erase_if(entries, [](const Entry& e) { return K::is_zero(e.second); });
    for (const auto& e : entries) check(e.first);
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i - 1].first == entries[i].first)
        throw std::invalid_argument(std::string("duplicate ") + what + " weight for state " +
                                    std::to_string(entries[i].first));
    return entries;
  }

  static Weight lookup(const std::vector<Entry>& entries, StateId q) {
    auto it = std::lower_bound(entries.begin(), entries.end(), q,
                               [](const Entry& e, StateId s) { return e.first < s; });
    return it != entries.end() && it->first == q ? it->second : K::zero();
  }

  std::size_t slot(StateId q, LabelId label) const {
    return q * (alphabet_.size() + 1) + (label == kEpsilon ? alphabet_.size() : label);
  }

  std::size_t num_states_ = 0;
  std::vector<std::string> alphabet_;
  std::vector<Entry> initial_;
  std::vector<Entry> final_;
  std::vector<WeightedTransition<K>> transitions_;
  bool has_epsilon_ = false;
  std::vector<std::size_t> offsets_;
};

/// Support of a weighted automaton: every non-zero weight becomes a plain
/// transition, initial or final membership.
template <Semifield K>
Automaton skeleton(const WeightedAutomaton<K>& w) {
  std::vector<StateId> initial, finals;
  for (const auto& [q, _] : w.initial_weights()) initial.push_back(q);
  for (const auto& [q, _] : w.final_weights()) finals.push_back(q);
  std::vector<Transition> transitions;
  for (const auto& t : w.transitions()) transitions.push_back({t.src, t.label, t.dst});
  return Automaton(w.alphabet(), w.num_states(), initial, finals, std::move(transitions));
}

/// Lifts an unweighted automaton to K with every weight equal to one.
template <Semifield K>
WeightedAutomaton<K> lift(const Automaton& a) {
  using Entry = typename WeightedAutomaton<K>::Entry;
  std::vector<Entry> initial, finals;
  a.initial().for_each([&](StateId q) { initial.emplace_back(q, K::one()); });
  a.final_states().for_each([&](StateId q) { finals.emplace_back(q, K::one()); });
  std::vector<WeightedTransition<K>> transitions;
  for (const auto& t : a.transitions()) transitions.push_back({t.src, t.label, t.dst, K::one()});
  return WeightedAutomaton<K>(a.alphabet(), a.num_states(), std::move(initial), std::move(finals),
                              std::move(transitions));
}

using TropicalAutomaton = WeightedAutomaton<TropicalSemifield>;

}  // namespace detlab
