#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "detlab/automaton.hpp"
#include "detlab/bitset.hpp"
#include "detlab/weighted_automaton.hpp"

namespace detlab {

/// Budget on the number of power states a determinization may create.
struct Fuel {
  std::optional<std::size_t> max_power_states;  // nullopt = unbounded

  static Fuel unbounded() { return {}; }
  static Fuel of(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fuel must be at least 1");
    return {n};
  }
  /// 10 * 2^min(n, 20) power states.
  static Fuel default_unweighted(std::size_t num_states) {
    return {std::size_t{10} << std::min<std::size_t>(num_states, 20)};
  }
  static Fuel default_weighted() { return {10000}; }

  bool allows(std::size_t count) const { return !max_power_states || count <= *max_power_states; }
};

struct DetResult {
  Automaton det;
  /// power_states[i] is the subset behind det state i; det state 0 is initial.
  std::vector<BitSet> power_states;
  std::unordered_map<BitSet, StateId, BitSetHash> state_map;
  std::size_t steps = 0;
  std::size_t transitions_considered = 0;
  bool terminated = true;
};

/// On-the-fly subset construction. Explores only power states reachable from
/// the initial set, in LIFO order with symbols in alphabet order. The empty
/// power state, when reached, is kept as an explicit dead state, so a
/// terminated result is total. Throws std::invalid_argument on epsilon
/// transitions.
DetResult determinize(const Automaton& a, Fuel fuel);
inline DetResult determinize(const Automaton& a) { return determinize(a, Fuel::default_unweighted(a.num_states())); }

/// Weighted power state: sparse residual-weight vector sorted by state, no
/// zero entries.
template <Semifield K>
using WeightedPowerState = std::vector<std::pair<StateId, typename K::value_type>>;

template <Semifield K>
struct PowerStateLess {
  bool operator()(const WeightedPowerState<K>& x, const WeightedPowerState<K>& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
      if (p.first != q.first) return p.first < q.first;
      return K::less(p.second, q.second);
    });
  }
};

template <Semifield K>
struct WeightedDetResult {
  WeightedAutomaton<K> det;
  std::vector<WeightedPowerState<K>> power_states;
  std::size_t steps = 0;
  std::size_t transitions_considered = 0;
  bool terminated = true;
};

/// Weighted on-the-fly determinization over a zero-sum-free commutative
/// semifield. The initial power state carries lambda unnormalized with det
/// initial weight one. For each symbol the arc weight is the sum of all
/// successor contributions and the successor residuals are divided by it.
/// An all-zero successor produces no arc. Power states compare exactly.
template <Semifield K>
WeightedDetResult<K> determinize_weighted(const WeightedAutomaton<K>& w, Fuel fuel = Fuel::default_weighted()) {
  static_assert(K::zero_sum_free, "weighted determinization needs a zero-sum-free semifield");
  using Weight = typename K::value_type;
  using PS = WeightedPowerState<K>;
  if (w.has_epsilon()) throw std::invalid_argument("determinize_weighted: automaton has epsilon transitions");

  WeightedDetResult<K> result;
  std::map<PS, StateId, PowerStateLess<K>> index;
  std::vector<StateId> stack;
  std::vector<WeightedTransition<K>> arcs;

  PS initial(w.initial_weights().begin(), w.initial_weights().end());
  index.emplace(initial, 0);
  result.power_states.push_back(std::move(initial));
  stack.push_back(0);

  std::vector<Weight> accum(w.num_states(), K::zero());
  std::vector<StateId> touched;
  bool out_of_fuel = false;
  while (!stack.empty() && !out_of_fuel) {
    const StateId current = stack.back();
    stack.pop_back();
    ++result.steps;
    for (LabelId a = 0; a < w.sigma() && !out_of_fuel; ++a) {
      touched.clear();
      for (const auto& [q, residual] : result.power_states[current]) {
        for (const auto& t : w.outgoing(q, a)) {
          ++result.transitions_considered;
          if (K::is_zero(accum[t.dst])) touched.push_back(t.dst);
          accum[t.dst] = K::plus(accum[t.dst], K::times(residual, t.weight));
        }
      }
      if (touched.empty()) continue;
      std::sort(touched.begin(), touched.end());
      Weight arc_weight = K::zero();
      for (StateId q : touched) arc_weight = K::plus(arc_weight, accum[q]);
      if (K::is_zero(arc_weight))
        throw std::logic_error("determinize_weighted: zero normalizer despite zero-sum-freeness");
      const Weight norm = K::inverse(arc_weight);
      PS next;
      next.reserve(touched.size());
      for (StateId q : touched) {
        next.emplace_back(q, K::times(accum[q], norm));
        accum[q] = K::zero();
      }

      auto it = index.find(next);
      StateId target;
      if (it != index.end()) {
        target = it->second;
      } else {
        if (!fuel.allows(result.power_states.size() + 1)) {
          out_of_fuel = true;
          break;
        }
        target = static_cast<StateId>(result.power_states.size());
        index.emplace(next, target);
        result.power_states.push_back(std::move(next));
        stack.push_back(target);
      }
      arcs.push_back({current, a, target, arc_weight});
    }
  }
  result.terminated = !out_of_fuel;

  using Entry = typename WeightedAutomaton<K>::Entry;
  std::vector<Entry> finals;
  for (std::size_t i = 0; i < result.power_states.size(); ++i) {
    Weight rho = K::zero();
    for (const auto& [q, residual] : result.power_states[i]) rho = K::plus(rho, K::times(residual, w.final_weight(q)));
    if (!K::is_zero(rho)) finals.emplace_back(static_cast<StateId>(i), rho);
  }
  result.det = WeightedAutomaton<K>(w.alphabet(), result.power_states.size(), {Entry{0, K::one()}},
                                    std::move(finals), std::move(arcs));
  return result;
}

}  // namespace detlab
