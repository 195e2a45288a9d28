#include "detlab/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace detlab {

bool is_valid_symbol(std::string_view token) {
  if (token.empty() || token == kEpsilonToken) return false;
  for (char c : token)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') return false;
  return true;
}

Automaton::Automaton(std::vector<std::string> alphabet, std::size_t num_states, const std::vector<StateId>& initial,
                     const std::vector<StateId>& final_states, std::vector<Transition> transitions)
    : num_states_(num_states), initial_(num_states), final_(num_states) {
  for (const auto& s : alphabet)
    if (!is_valid_symbol(s)) throw std::invalid_argument("invalid alphabet symbol '" + s + "'");

  std::vector<std::string> sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<LabelId> remap(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    remap[i] = static_cast<LabelId>(std::lower_bound(sorted.begin(), sorted.end(), alphabet[i]) - sorted.begin());
  alphabet_ = std::move(sorted);

  auto check_state = [&](StateId q, const char* what) {
    if (q >= num_states) throw std::invalid_argument(std::string("unknown state ") + std::to_string(q) + " in " + what);
  };
  for (StateId q : initial) {
    check_state(q, "initial set");
    initial_.set(q);
  }
  for (StateId q : final_states) {
    check_state(q, "final set");
    final_.set(q);
  }
  for (auto& t : transitions) {
    check_state(t.src, "transition source");
    check_state(t.dst, "transition target");
    if (t.label != kEpsilon) {
      if (t.label >= remap.size()) throw std::invalid_argument("transition label outside the alphabet");
      t.label = remap[t.label];
    } else {
      has_epsilon_ = true;
    }
  }
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  transitions_ = std::move(transitions);

  offsets_.assign(num_states_ * (alphabet_.size() + 1) + 1, 0);
  for (const auto& t : transitions_) ++offsets_[slot(t.src, t.label) + 1];
  for (std::size_t s = 1; s < offsets_.size(); ++s) offsets_[s] += offsets_[s - 1];
  dsts_.reserve(transitions_.size());
  // transitions_ is sorted in slot order, so destinations land contiguously.
  for (const auto& t : transitions_) dsts_.push_back(t.dst);
}

Automaton Automaton::from_edges(std::size_t num_states, const std::vector<StateId>& initial,
                                const std::vector<StateId>& final_states, const std::vector<Edge>& edges,
                                std::vector<std::string> extra_alphabet) {
  std::vector<std::string> alphabet = std::move(extra_alphabet);
  for (const auto& e : edges)
    if (e.label != kEpsilonToken) alphabet.push_back(e.label);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<Transition> transitions;
  transitions.reserve(edges.size());
  for (const auto& e : edges) {
    LabelId label = kEpsilon;
    if (e.label != kEpsilonToken)
      label = static_cast<LabelId>(std::lower_bound(alphabet.begin(), alphabet.end(), e.label) - alphabet.begin());
    transitions.push_back({e.src, label, e.dst});
  }
  return Automaton(std::move(alphabet), num_states, initial, final_states, std::move(transitions));
}

std::optional<LabelId> Automaton::label_of(std::string_view symbol) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end() || *it != symbol) return std::nullopt;
  return static_cast<LabelId>(it - alphabet_.begin());
}

std::string_view Automaton::label_name(LabelId label) const {
  return label == kEpsilon ? kEpsilonToken : std::string_view(alphabet_.at(label));
}

Word Automaton::encode(const std::vector<std::string>& symbols) const {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto id = label_of(s);
    if (!id) throw std::invalid_argument("symbol '" + s + "' is not in the alphabet");
    w.push_back(*id);
  }
  return w;
}

std::span<const StateId> Automaton::successors(StateId q, LabelId label) const {
  const std::size_t s = slot(q, label);
  return std::span<const StateId>(dsts_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
}

Automaton remove_epsilon(const Automaton& a) {
  if (!a.has_epsilon()) return a;
  const std::size_t n = a.num_states();

  std::vector<BitSet> closure(n, BitSet(n));
  for (StateId q = 0; q < n; ++q) {
    BitSet& c = closure[q];
    std::vector<StateId> todo{q};
    c.set(q);
    while (!todo.empty()) {
      StateId p = todo.back();
      todo.pop_back();
      for (StateId r : a.successors(p, kEpsilon))
        if (!c.test(r)) {
          c.set(r);
          todo.push_back(r);
        }
    }
  }

  BitSet initial(n);
  a.initial().for_each([&](StateId q) { initial |= closure[q]; });
  std::vector<StateId> finals;
  std::vector<Transition> transitions;
  for (StateId q = 0; q < n; ++q) {
    if (closure[q].intersects(a.final_states())) finals.push_back(q);
    closure[q].for_each([&](StateId p) {
      for (LabelId label = 0; label < a.sigma(); ++label)
        for (StateId r : a.successors(p, label)) transitions.push_back({q, label, r});
    });
  }
  return Automaton(a.alphabet(), n, initial.members(), finals, std::move(transitions));
}

std::vector<BoolMatrix> transition_matrices(const Automaton& a) {
  if (a.has_epsilon()) throw std::invalid_argument("transition_matrices: automaton has epsilon transitions");
  std::vector<BoolMatrix> mats(a.sigma(), BoolMatrix(a.num_states()));
  for (const auto& t : a.transitions()) mats[t.label].set(t.src, t.dst);
  return mats;
}

bool is_deterministic(const Automaton& a) {
  if (a.has_epsilon() || a.initial().count() != 1) return false;
  for (StateId q = 0; q < a.num_states(); ++q)
    for (LabelId label = 0; label < a.sigma(); ++label)
      if (a.successors(q, label).size() > 1) return false;
  return true;
}

BitSet accessible_states(const Automaton& a) {
  BitSet seen = a.initial();
  std::vector<StateId> todo = seen.members();
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    for (LabelId label = 0; label < a.sigma(); ++label)
      for (StateId r : a.successors(q, label))
        if (!seen.test(r)) {
          seen.set(r);
          todo.push_back(r);
        }
    for (StateId r : a.successors(q, kEpsilon))
      if (!seen.test(r)) {
        seen.set(r);
        todo.push_back(r);
      }
  }
  return seen;
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (!is_deterministic(a) || !is_deterministic(b)) return false;
  if (a.num_states() != b.num_states() || a.alphabet() != b.alphabet()) return false;
  if (a.transitions().size() != b.transitions().size()) return false;

  constexpr StateId kUnmapped = std::numeric_limits<StateId>::max();
  std::vector<StateId> fwd(a.num_states(), kUnmapped), bwd(b.num_states(), kUnmapped);
  const StateId a0 = a.initial().members().front();
  const StateId b0 = b.initial().members().front();
  fwd[a0] = b0;
  bwd[b0] = a0;
  std::deque<StateId> queue{a0};
  std::size_t mapped = 1;
  while (!queue.empty()) {
    StateId p = queue.front();
    queue.pop_front();
    StateId q = fwd[p];
    if (a.is_final(p) != b.is_final(q)) return false;
    for (LabelId label = 0; label < a.sigma(); ++label) {
      auto sp = a.successors(p, label);
      auto sq = b.successors(q, label);
      if (sp.size() != sq.size()) return false;
      if (sp.empty()) continue;
      const StateId p2 = sp.front(), q2 = sq.front();
      if (fwd[p2] == kUnmapped && bwd[q2] == kUnmapped) {
        fwd[p2] = q2;
        bwd[q2] = p2;
        ++mapped;
        queue.push_back(p2);
      } else if (fwd[p2] != q2 || bwd[q2] != p2) {
        return false;
      }
    }
  }
  return mapped == a.num_states();
}

}  // namespace detlab
