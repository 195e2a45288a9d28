#include <doctest.h>

#include <map>
#include <set>

#include "detlab/determinize.hpp"
#include "detlab/gen.hpp"
#include "detlab/monoid.hpp"
#include "oracles.hpp"

using namespace detlab;

namespace {

BoolMatrix cycle_matrix(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, (i + 1) % n);
  return m;
}

TropicalWeight tw(long v) { return TropicalWeight::of(Rational(v)); }

}  // namespace

TEST_CASE("small closures") {
  CHECK(monoid_closure({cycle_matrix(4)}, 100).size() == 4);
  CHECK(monoid_closure({BoolMatrix::ones(3)}, 100).size() == 2);
  CHECK(monoid_closure({BoolMatrix::identity(3)}, 100).size() == 1);
  CHECK(monoid_closure(3, {}, 100).size() == 1);
  CHECK_THROWS_AS(monoid_closure({BoolMatrix(2), BoolMatrix(3)}, 100), std::invalid_argument);
}

TEST_CASE("Moore(3) transition monoid has 65 elements") {
  // Frozen from the independent depth-first closure in oracles.hpp.
  const auto closure = monoid_closure(gen_moore(3), default_monoid_fuel(3));
  CHECK(closure.complete);
  CHECK(closure.size() == 65);
  CHECK(closure.elements[0] == BoolMatrix::identity(3));
}

TEST_CASE("closure agrees with depth-first enumeration") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<BoolMatrix> gens;
    for (std::size_t g = 0, count = 1 + rng.below(3); g < count; ++g) gens.push_back(oracle::random_matrix(n, rng, 1, 3));
    const auto closure = monoid_closure(n, gens, 1 << 20);
    REQUIRE(closure.complete);
    CHECK(closure.size() == oracle::monoid_size(gens, n));
    // Closed under right multiplication by every generator.
    std::set<std::string> elements;
    for (const auto& e : closure.elements) elements.insert(e.to_string());
    for (const auto& e : closure.elements)
      for (const auto& g : gens) CHECK(elements.count(bool_matmul(e, g).to_string()) == 1);
  }
}

TEST_CASE("fuel stops the closure") {
  const auto closure = monoid_closure(gen_moore(4), 50);
  CHECK_FALSE(closure.complete);
  CHECK(closure.size() == 50);
}

TEST_CASE("witness words are shortlex-least and multiply back") {
  const Automaton m = gen_moore(3);
  const auto closure = monoid_closure(m, default_monoid_fuel(3));
  for (std::size_t i = 0; i < closure.size(); ++i) CHECK(morphism(m, closure.word(i)) == closure.elements[i]);

  // First word in shortlex order reaching each matrix, over words of length <= 10.
  std::map<std::string, Word> first;
  for (std::size_t len = 0; len <= 10; ++len)
    for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
      Word w(len);
      for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<LabelId>(code >> (len - 1 - k) & 1u);
      first.emplace(morphism(m, w).to_string(), w);
    }
  REQUIRE(first.size() == closure.size());
  for (std::size_t i = 0; i < closure.size(); ++i) CHECK(first.at(closure.elements[i].to_string()) == closure.word(i));
}

TEST_CASE("morphism") {
  const Automaton m = gen_moore(3);
  CHECK(morphism(m, Word{}) == BoolMatrix::identity(3));
  const auto mats = transition_matrices(m);
  CHECK(morphism(m, std::vector<std::string>{"a"}) == mats[0]);
  CHECK_THROWS_AS(morphism(m, std::vector<std::string>{"c"}), std::invalid_argument);

  // Two-state automaton: compare T(a)T(b) with explicit length-2 path reachability.
  const Automaton two = Automaton::from_edges(2, {0}, {1}, {{0, "a", 0}, {0, "a", 1}, {1, "b", 0}, {0, "b", 1}});
  const BoolMatrix ab = morphism(two, std::vector<std::string>{"a", "b"});
  for (StateId i = 0; i < 2; ++i)
    for (StateId j = 0; j < 2; ++j) {
      bool path = false;
      for (StateId k = 0; k < 2; ++k) {
        const auto s1 = two.successors(i, 0);
        const auto s2 = two.successors(k, 1);
        path = path || (std::find(s1.begin(), s1.end(), k) != s1.end() && std::find(s2.begin(), s2.end(), j) != s2.end());
      }
      CHECK(ab.get(i, j) == path);
    }

  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const Automaton a = oracle::random_automaton(1 + rng.below(6), 2, rng);
    Word u(rng.below(5)), v(rng.below(5));
    for (auto& x : u) x = static_cast<LabelId>(rng.below(2));
    for (auto& x : v) x = static_cast<LabelId>(rng.below(2));
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(morphism(a, uv) == bool_matmul(morphism(a, u), morphism(a, v)));
  }
}

TEST_CASE("membership through the monoid") {
  CHECK(accepts_via_monoid(gen_moore(2), std::vector<std::string>{"a"}));
  const Automaton no_initial = Automaton::from_edges(2, {}, {1}, {{0, "a", 1}});
  CHECK_FALSE(accepts_via_monoid(no_initial, std::vector<std::string>{"a"}));
  CHECK_FALSE(accepts_via_monoid(no_initial, Word{}));

  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const Automaton a = oracle::random_automaton(5, 2, rng);
    for (int k = 0; k < 50; ++k) {
      Word w(rng.below(7));
      for (auto& x : w) x = static_cast<LabelId>(rng.below(2));
      CHECK(accepts_via_monoid(a, w) == oracle_accepts(a, w));
    }
  }
}

TEST_CASE("power states are the image space of the initial vector") {
  Rng rng(31);
  for (int t = 0; t < 80; ++t) {
    const Automaton a = oracle::random_automaton(1 + rng.below(6), 1 + rng.below(3), rng);
    const auto closure = monoid_closure(a, 1 << 20);
    REQUIRE(closure.complete);
    std::set<BitSet> images;
    for (const auto& m : closure.elements) images.insert(m.left_multiply(a.initial()));
    const DetResult r = determinize(a);
    const std::set<BitSet> power_states(r.power_states.begin(), r.power_states.end());
    CHECK(images == power_states);
  }
}

TEST_CASE("weighted closure") {
  using T = TropicalSemifield;
  SUBCASE("Boolean instance matches the unweighted closure") {
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
      const Automaton a = oracle::random_automaton(1 + rng.below(5), 1 + rng.below(3), rng);
      const auto w = weighted_monoid_closure(lift<BooleanSemifield>(a), 1 << 20);
      const auto u = monoid_closure(a, 1 << 20);
      CHECK(w.complete);
      CHECK(w.size() == u.size());
    }
  }
  SUBCASE("positive diagonal cycle never closes") {
    Matrix<T> m(2);
    m.set(0, 0, tw(1));
    m.set(0, 1, tw(0));
    const auto closure = weighted_monoid_closure<T>(2, {m}, 100);
    CHECK_FALSE(closure.complete);
    CHECK(closure.size() == 100);
  }
  SUBCASE("split example") {
    const TropicalAutomaton w({"a", "b"}, 4, {{0, tw(0)}}, {{3, tw(0)}},
                              {{0, 0, 1, tw(1)}, {0, 0, 2, tw(3)}, {1, 1, 3, tw(0)}, {2, 1, 3, tw(0)}});
    const auto closure = weighted_monoid_closure(w, 1000);
    REQUIRE(closure.complete);
    // I, T(a), T(b), T(a)T(b) and the zero matrix T(a)T(a).
    CHECK(closure.size() == 5);
    const auto r = determinize_weighted(w);
    CHECK(r.det.num_states() <= closure.size() + 1);
  }
  SUBCASE("divergent automaton") {
    CHECK_FALSE(weighted_monoid_closure(divergent_tropical(), 1000).complete);
  }
}
