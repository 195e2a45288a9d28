#include "detlab/determinize.hpp"

namespace detlab {

DetResult determinize(const Automaton& a, Fuel fuel) {
  if (a.has_epsilon()) throw std::invalid_argument("determinize: automaton has epsilon transitions");
  const std::size_t n = a.num_states();

  DetResult result;
  std::vector<Transition> arcs;
  std::vector<StateId> finals;
  std::vector<StateId> stack;

  result.state_map.emplace(a.initial(), 0);
  result.power_states.push_back(a.initial());
  stack.push_back(0);

  bool out_of_fuel = false;
  while (!stack.empty() && !out_of_fuel) {
    const StateId current = stack.back();
    stack.pop_back();
    ++result.steps;
    for (LabelId label = 0; label < a.sigma(); ++label) {
      BitSet next(n);
      result.power_states[current].for_each([&](StateId q) {
        auto succ = a.successors(q, label);
        result.transitions_considered += succ.size();
        for (StateId r : succ) next.set(r);
      });
      StateId target;
      if (auto it = result.state_map.find(next); it != result.state_map.end()) {
        target = it->second;
      } else {
        if (!fuel.allows(result.power_states.size() + 1)) {
          out_of_fuel = true;
          break;
        }
        target = static_cast<StateId>(result.power_states.size());
        result.state_map.emplace(next, target);
        result.power_states.push_back(std::move(next));
        stack.push_back(target);
      }
      arcs.push_back({current, label, target});
    }
  }
  result.terminated = !out_of_fuel;

  for (std::size_t i = 0; i < result.power_states.size(); ++i)
    if (result.power_states[i].intersects(a.final_states())) finals.push_back(static_cast<StateId>(i));
  result.det = Automaton(a.alphabet(), result.power_states.size(), {0}, finals, std::move(arcs));
  return result;
}

}  // namespace detlab
