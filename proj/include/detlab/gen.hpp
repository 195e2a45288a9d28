#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "detlab/automaton.hpp"
#include "detlab/bool_matrix.hpp"
#include "detlab/weighted_automaton.hpp"

namespace detlab {

/// Seeded generator. The engine is std::mt19937_64, whose output sequence is
/// fixed by the C++ standard; bounded draws use rejection sampling instead of
/// <random> distributions, whose algorithms are implementation-defined. Equal
/// seeds therefore give equal automata on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() >> 63) != 0; }
  /// Uniformly random permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);
  /// Uniformly random k-subset of 0..n-1 (partial Fisher-Yates), ascending.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);
  /// Random non-empty subset of 0..n-1: each element with probability 1/2,
  /// one uniform element if that came out empty.
  std::vector<StateId> nonempty_states(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

enum class Family { kMoore, kOneLetterIrreducible, kCommutative, kIndecomposable, kDense, kFiniteTreeWidth };

std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
  Family family = Family::kMoore;
  std::size_t n = 2;
  std::size_t sigma = 2;
  std::size_t d = 2;  // dense
  std::size_t r = 1;  // indecomposable
  std::size_t k = 1;  // finite tree width
  std::uint64_t seed = 0;
  bool correlated = false;  // dense: one support shared by all symbols
  std::size_t max_tries = 1000;
};

/// Symbols a, b, c, ... for up to 26 letters, s0, s1, ... beyond.
std::vector<std::string> symbol_names(std::size_t sigma);

/// The classic 2^n blow-up automaton on q1..qn (state i-1 is q_i): a b-loop
/// on q1, q1 -a-> q2, q_i -a,b-> q_{i+1} for 2 <= i < n, and qn -a-> q1, q2.
/// Initial {q1}, final {qn}.
Automaton gen_moore(std::size_t n);

/// One symbol; a random Hamiltonian cycle plus up to n random extra edges,
/// so the matrix is irreducible. Random non-empty initial and final sets.
Automaton gen_one_letter_irreducible(std::size_t n, std::uint64_t seed);

/// T(a_1) random irreducible, T(a_i) = T(a_1)^(k_i) with k_i uniform in
/// [1, n]. Later generators need not be irreducible.
Automaton gen_commutative(std::size_t n, std::size_t sigma, std::uint64_t seed);

/// Every matrix has an all-ones diagonal plus random off-diagonal cells up to
/// max((1 + r) n, ceil((1 + r) n ln n)) non-zeros, redrawn until it is
/// r-indecomposable. Throws std::runtime_error naming the density after
/// max_tries failed draws.
Automaton gen_indecomposable(std::size_t n, std::size_t sigma, std::size_t r, std::uint64_t seed,
                             std::size_t max_tries = 1000);

/// Non-zeros of each indecomposable draw for the given n and r.
std::size_t indecomposable_density(std::size_t n, std::size_t r);

/// Each matrix uniform among those with exactly floor(n^2 / d) non-zeros.
/// With `correlated` all symbols share one matrix. Requires d >= 1 and
/// floor(n^2 / d) >= n.
Automaton gen_dense(std::size_t n, std::size_t sigma, std::size_t d, std::uint64_t seed, bool correlated = false);

/// Tree width exactly k: a deterministic acyclic chain feeding a total
/// deterministic cyclic part, with k - 1 chain transitions given a second
/// target inside the cyclic part. No cycle contains a non-deterministic
/// transition. Requires 1 <= k <= n - 1.
Automaton gen_finite_tw(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t sigma = 2);

Automaton generate(const GenSpec& spec);

/// Random tropical automaton with an acyclic transition graph (so weighted
/// determinization terminates). Weights are small non-negative rationals with
/// denominators 1 or 2.
TropicalAutomaton gen_tropical_acyclic(std::size_t n, std::size_t sigma, std::uint64_t seed);

/// Random tropical automaton with cycles and arbitrary small weights; its
/// determinization may diverge.
TropicalAutomaton gen_tropical_random(std::size_t n, std::size_t sigma, std::uint64_t seed);

/// Two a-cycles of weights 1 and 2 behind one a-split, closed by different
/// letters: residual weights grow without bound, so determinization and the
/// weighted monoid closure never finish.
TropicalAutomaton divergent_tropical();

/// Breadth-first reachable-subset construction over std::set, written
/// independently of determinize. The empty subset is a state when reachable.
/// State i is the i-th subset discovered.
struct OraclePowerset {
  Automaton det;
  std::vector<std::vector<StateId>> subsets;
};
OraclePowerset oracle_powerset(const Automaton& a);

/// Membership by depth-first path search.
bool oracle_accepts(const Automaton& a, const Word& word);

/// Acceptance agrees on every word of length <= max_len. Alphabets must be
/// equal.
bool oracle_language_eq(const Automaton& x, const Automaton& y, std::size_t max_len);

/// Total weight of a word: sum over all accepting paths of
/// initial * transitions * final, by path enumeration.
template <Semifield K>
typename K::value_type oracle_weight(const WeightedAutomaton<K>& w, const Word& word) {
  using Weight = typename K::value_type;
  Weight total = K::zero();
  // Explicit stack of (state, position, weight so far): one entry per path
  // prefix.
  struct Frame {
    StateId q;
    std::size_t pos;
    Weight weight;
  };
  std::vector<Frame> stack;
  for (const auto& [q, iw] : w.initial_weights()) stack.push_back({q, 0, iw});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.pos == word.size()) {
      total = K::plus(total, K::times(f.weight, w.final_weight(f.q)));
      continue;
    }
    for (const auto& t : w.transitions())
      if (t.src == f.q && t.label == word[f.pos]) stack.push_back({t.dst, f.pos + 1, K::times(f.weight, t.weight)});
  }
  return total;
}

/// Word weights agree exactly on every word of length <= max_len.
template <Semifield K>
bool oracle_language_eq(const WeightedAutomaton<K>& x, const WeightedAutomaton<K>& y, std::size_t max_len) {
  if (x.alphabet() != y.alphabet()) return false;
  const std::size_t sigma = x.sigma();
  Word word;
  // Odometer over all words in length-lexicographic order.
  for (std::size_t len = 0; len <= max_len; ++len) {
    word.assign(len, 0);
    while (true) {
      if (!K::equal(oracle_weight(x, word), oracle_weight(y, word))) return false;
      std::size_t i = len;
      while (i > 0 && word[i - 1] + 1 == sigma) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
    if (sigma == 0) break;
  }
  return true;
}

}  // namespace detlab
