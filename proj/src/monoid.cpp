#include "detlab/monoid.hpp"

#include <unordered_set>

namespace detlab {

std::size_t default_monoid_fuel(std::size_t dim) {
  return std::size_t{1} << std::min<std::size_t>(dim * dim, 24);
}

MonoidClosure monoid_closure(std::size_t dim, const std::vector<BoolMatrix>& gens, std::size_t fuel) {
  for (const auto& g : gens)
    if (g.dim() != dim) throw std::invalid_argument("monoid_closure: generator dimension mismatch");
  MonoidClosure out;
  // The set holds indices into out.elements; a candidate is appended first and
  // dropped again when it is already known.
  auto hash = [&](std::size_t i) { return out.elements[i].hash(); };
  auto eq = [&](std::size_t i, std::size_t j) { return out.elements[i] == out.elements[j]; };
  std::unordered_set<std::size_t, decltype(hash), decltype(eq)> seen(64, hash, eq);

  out.elements.push_back(BoolMatrix::identity(dim));
  out.parent.push_back(0);
  out.last_generator.push_back(0);
  seen.insert(0);
  // Queue order is shortlex order of the witness words, so the first word
  // found for an element is its shortlex-least one.
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      out.elements.push_back(bool_matmul(out.elements[head], gens[g]));
      const std::size_t candidate = out.elements.size() - 1;
      if (seen.contains(candidate)) {
        out.elements.pop_back();
        continue;
      }
      if (candidate >= fuel) {
        out.elements.pop_back();
        out.complete = false;
        return out;
      }
      seen.insert(candidate);
      out.parent.push_back(head);
      out.last_generator.push_back(static_cast<LabelId>(g));
    }
  }
  return out;
}

MonoidClosure monoid_closure(const std::vector<BoolMatrix>& gens, std::size_t fuel) {
  if (gens.empty()) throw std::invalid_argument("monoid_closure: no generators; pass the dimension explicitly");
  return monoid_closure(gens.front().dim(), gens, fuel);
}

MonoidClosure monoid_closure(const Automaton& a, std::size_t fuel) {
  return monoid_closure(a.num_states(), transition_matrices(a), fuel);
}

BoolMatrix morphism(const Automaton& a, const Word& word) {
  if (a.has_epsilon()) throw std::invalid_argument("morphism: automaton has epsilon transitions");
  auto mats = transition_matrices(a);
  BoolMatrix m = BoolMatrix::identity(a.num_states());
  for (LabelId label : word) {
    if (label >= mats.size()) throw std::invalid_argument("morphism: symbol not in the alphabet");
    m = bool_matmul(m, mats[label]);
  }
  return m;
}

BoolMatrix morphism(const Automaton& a, const std::vector<std::string>& symbols) {
  return morphism(a, a.encode(symbols));
}

bool accepts_via_monoid(const Automaton& a, const Word& word) {
  const BitSet image = morphism(a, word).left_multiply(a.initial());
  return image.intersects(a.final_states());
}

bool accepts_via_monoid(const Automaton& a, const std::vector<std::string>& symbols) {
  return accepts_via_monoid(a, a.encode(symbols));
}

}  // namespace detlab
