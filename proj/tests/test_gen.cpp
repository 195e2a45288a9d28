#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "detlab/analysis.hpp"
#include "detlab/determinize.hpp"
#include "detlab/gen.hpp"
#include "detlab/monoid.hpp"
#include "detlab/text_format.hpp"
#include "oracles.hpp"

using namespace detlab;

namespace {

std::size_t nonzeros(const BoolMatrix& m) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) count += m.get(i, j) ? 1 : 0;
  return count;
}

}  // namespace

TEST_CASE("rng") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.below(7) < 7);
    const auto x = rng.between(3, 5);
    CHECK((x >= 3 && x <= 5));
  }
  auto p = rng.permutation(10);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(p[i] == i);
  const auto s = rng.subset(10, 4);
  CHECK(s.size() == 4);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 4);
  for (int i = 0; i < 100; ++i) CHECK_FALSE(rng.nonempty_states(3).empty());
}

TEST_CASE("family names") {
  for (Family f : {Family::kMoore, Family::kOneLetterIrreducible, Family::kCommutative, Family::kIndecomposable,
                   Family::kDense, Family::kFiniteTreeWidth})
    CHECK(parse_family(family_name(f)) == f);
  CHECK(parse_family("finite_tw") == Family::kFiniteTreeWidth);
  CHECK_FALSE(parse_family("nope").has_value());
  CHECK(symbol_names(3) == std::vector<std::string>{"a", "b", "c"});
  CHECK(symbol_names(27)[26] == "s26");
}

TEST_CASE("Moore automaton edges") {
  const Automaton two = gen_moore(2);
  const Automaton expected =
      Automaton::from_edges(2, {0}, {1}, {{0, "b", 0}, {0, "a", 1}, {1, "a", 0}, {1, "a", 1}});
  CHECK(two == expected);
  const Automaton three = gen_moore(3);
  CHECK(three.num_states() == 3);
  CHECK(three.transitions().size() == 6);
  CHECK_THROWS_AS(gen_moore(1), std::invalid_argument);
  CHECK(oracle_powerset(three).det.num_states() == 8);
}

TEST_CASE("equal seeds give byte-identical automata") {
  for (Family f : {Family::kMoore, Family::kOneLetterIrreducible, Family::kCommutative, Family::kIndecomposable,
                   Family::kDense, Family::kFiniteTreeWidth}) {
    GenSpec spec;
    spec.family = f;
    spec.n = 6;
    spec.r = 2;
    spec.k = 3;
    spec.seed = 77;
    const std::string first = serialize_automaton(generate(spec));
    CHECK(serialize_automaton(generate(spec)) == first);
    if (f != Family::kMoore) {
      spec.seed = 78;
      CHECK(serialize_automaton(generate(spec)) != first);
    }
  }
}

TEST_CASE("one-letter irreducible generator") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Automaton a = gen_one_letter_irreducible(6, seed);
    CHECK(a.sigma() == 1);
    CHECK(a.initial().any());
    CHECK(a.final_states().any());
    CHECK(is_irreducible(transition_matrices(a)[0]));
    CHECK(oracle_powerset(a).det.num_states() <= 32);
  }
}

TEST_CASE("commutative generator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Automaton a = gen_commutative(4, 2, seed);
    const auto mats = transition_matrices(a);
    CHECK(is_commutative(mats));
    CHECK(is_irreducible(mats[0]));
    const IndexPeriod ip = index_period(mats[0]);
    const auto closure = monoid_closure(a, 1 << 20);
    CHECK(closure.size() <= ip.index + ip.period);
    bool all_irreducible = true;
    for (const auto& m : mats) all_irreducible = all_irreducible && is_irreducible(m);
    if (all_irreducible) CHECK(oracle_powerset(a).det.num_states() <= 256);
  }
  CHECK_THROWS_AS(gen_commutative(4, 1, 0), std::invalid_argument);
}

TEST_CASE("indecomposable generator") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Automaton a = gen_indecomposable(8, 2, 2, seed);
    for (const auto& m : transition_matrices(a)) {
      CHECK(m.diagonal_all_ones());
      CHECK(indecomposability(m, 2));
      CHECK(nonzeros(m) <= indecomposable_density(8, 2));
    }
    CHECK(determinize(a).det.num_states() <= 17);
    for (const auto& m : transition_matrices(gen_indecomposable(6, 2, 1, seed))) CHECK(is_irreducible(m));
  }
  CHECK(indecomposable_density(8, 2) == static_cast<std::size_t>(std::ceil(3 * 8 * std::log(8.0))));
  CHECK_THROWS_AS(gen_indecomposable(4, 2, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_indecomposable(4, 2, 0, 0), std::invalid_argument);
  CHECK_THROWS_WITH_AS(gen_indecomposable(9, 1, 2, 0, 0), doctest::Contains("density 60/81"), std::runtime_error);
  CHECK_THROWS_WITH_AS(gen_indecomposable(40, 1, 1, 0, 0), doctest::Contains("density 296/1600"),
                       std::runtime_error);
}

TEST_CASE("dense generator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Automaton a = gen_dense(10, 2, 2, seed);
    const auto mats = transition_matrices(a);
    for (const auto& m : mats) CHECK(nonzeros(m) == 50);
    const Automaton c = gen_dense(10, 3, 4, seed, true);
    const auto cm = transition_matrices(c);
    for (const auto& m : cm) {
      CHECK(nonzeros(m) == 25);
      CHECK(m == cm[0]);
    }
  }
  CHECK_THROWS_AS(gen_dense(10, 2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_dense(10, 2, 11, 0), std::invalid_argument);
}

TEST_CASE("dense supports are uniform") {
  // 3x3 matrices with 3 non-zeros: 84 supports, each expected 1e5 / 84 times.
  constexpr int kDraws = 100000;
  std::map<std::string, int> counts;
  for (int seed = 0; seed < kDraws; ++seed)
    ++counts[transition_matrices(gen_dense(3, 1, 3, static_cast<std::uint64_t>(seed)))[0].to_string()];
  CHECK(counts.size() == 84);
  const double p = 1.0 / 84;
  const double mean = kDraws * p;
  const double sd = std::sqrt(kDraws * p * (1 - p));
  for (const auto& [support, count] : counts) CHECK(std::abs(count - mean) <= 5 * sd);
}

TEST_CASE("finite tree width generator") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Automaton a = gen_finite_tw(8, k, seed);
      const TreeWidth w = tree_width_analysis(a);
      CHECK(w.finite);
      CHECK(!oracle::nondeterministic_cycle(a));
      REQUIRE(w.value.has_value());
      CHECK(*w.value == k);
      if (k == 1) CHECK(is_deterministic(a));
      if (k == 3) CHECK(determinize(a).det.num_states() <= 257);
    }
  CHECK_THROWS_AS(gen_finite_tw(5, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_finite_tw(5, 0, 0), std::invalid_argument);
  CHECK(tree_width_analysis(gen_finite_tw(2, 1, 3)).finite);
}

TEST_CASE("powerset oracle") {
  const Automaton det = Automaton::from_edges(3, {0}, {2}, {{0, "a", 1}, {1, "b", 2}});
  CHECK(oracle_powerset(det).det.num_states() <= 4);
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const Automaton a = oracle::random_automaton(1 + rng.below(6), 1 + rng.below(3), rng);
    const OraclePowerset o = oracle_powerset(a);
    const DetResult r = determinize(a);
    CHECK(o.det.num_states() == r.steps);
    CHECK(isomorphic(o.det, r.det));
  }
}

TEST_CASE("language equality oracle") {
  const Automaton m = gen_moore(3);
  CHECK(oracle_language_eq(m, m, 6));
  const Automaton fewer_finals(m.alphabet(), 3, {0}, {}, m.transitions());
  CHECK_FALSE(oracle_language_eq(m, fewer_finals, 6));
  const TropicalAutomaton w = divergent_tropical();
  CHECK(oracle_language_eq(w, w, 4));
}
