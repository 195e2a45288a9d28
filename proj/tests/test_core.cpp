#include <doctest.h>

#include <set>

#include "detlab/automaton.hpp"
#include "detlab/bool_matrix.hpp"
#include "detlab/gen.hpp"
#include "detlab/semifield.hpp"
#include "detlab/text_format.hpp"
#include "detlab/weighted_automaton.hpp"
#include "oracles.hpp"

using namespace detlab;

TEST_CASE("bitset basics") {
  BitSet s(130);
  CHECK(s.none());
  s.set(0);
  s.set(64);
  s.set(129);
  CHECK(s.count() == 3);
  CHECK(s.members() == std::vector<StateId>{0, 64, 129});
  BitSet t = BitSet::from_members(130, {64});
  CHECK(s.intersects(t));
  t.reset(64);
  CHECK_FALSE(s.intersects(t));
  CHECK(BitSet::from_members(130, {0, 64, 129}) == s);
}

TEST_CASE("bool matrix construction and products") {
  const BoolMatrix swap = BoolMatrix::from_rows({"01", "10"});
  CHECK(bool_matmul(swap, swap) == BoolMatrix::identity(2));
  const BoolMatrix ones = BoolMatrix::ones(3);
  CHECK(bool_matmul(ones, ones) == ones);
  CHECK(ones.to_string() == "111/111/111");
  CHECK_THROWS_AS(bool_matmul(swap, ones), std::invalid_argument);

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BoolMatrix m = oracle::random_matrix(1 + rng.below(9), rng);
    CHECK(bool_matmul(BoolMatrix::identity(m.dim()), m) == m);
    CHECK(bool_matmul(m, BoolMatrix::identity(m.dim())) == m);
    const BoolMatrix x = oracle::random_matrix(m.dim(), rng);
    CHECK(oracle::to_dense(bool_matmul(m, x)) == oracle::multiply(oracle::to_dense(m), oracle::to_dense(x)));
  }
}

TEST_CASE("bool matrix row vector product and column permutation") {
  const BoolMatrix m = BoolMatrix::from_rows({"010", "001", "100"});
  CHECK(m.left_multiply(BitSet::from_members(3, {0, 1})) == BitSet::from_members(3, {1, 2}));
  const BoolMatrix p = m.permute_columns({1, 2, 0});
  CHECK(p.diagonal_all_ones());
  CHECK(m.transpose() == BoolMatrix::from_rows({"001", "100", "010"}));
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(format_rational(Rational(3, 2)) == "1.5");
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK(format_rational(Rational(-4)) == "-4");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1."));
  CHECK_THROWS(TropicalSemifield::parse("inf"));
}

namespace {

template <class K, class Sample>
void check_semifield_axioms(Sample sample) {
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample(), y = sample(), z = sample();
    CHECK(K::equal(K::plus(K::plus(x, y), z), K::plus(x, K::plus(y, z))));
    CHECK(K::equal(K::times(K::times(x, y), z), K::times(x, K::times(y, z))));
    CHECK(K::equal(K::plus(x, y), K::plus(y, x)));
    CHECK(K::equal(K::times(x, y), K::times(y, x)));
    CHECK(K::equal(K::times(x, K::plus(y, z)), K::plus(K::times(x, y), K::times(x, z))));
    CHECK(K::equal(K::plus(x, K::zero()), x));
    CHECK(K::equal(K::times(x, K::one()), x));
    CHECK(K::is_zero(K::times(x, K::zero())));
    if (!K::is_zero(x)) CHECK(K::equal(K::times(x, K::inverse(x)), K::one()));
    if (K::is_zero(K::plus(x, y))) CHECK((K::is_zero(x) && K::is_zero(y)));
  }
}

}  // namespace

TEST_CASE("semifield axioms on sampled triples") {
  Rng rng(11);
  check_semifield_axioms<BooleanSemifield>([&] { return rng.coin(); });
  check_semifield_axioms<TropicalSemifield>([&] {
    if (rng.below(8) == 0) return TropicalWeight::inf();
    const long num = static_cast<long>(rng.below(41)) - 20;
    const long den = static_cast<long>(1 + rng.below(6));
    return TropicalWeight::of(Rational(num, den));
  });
}

TEST_CASE("tropical semifield operations") {
  using T = TropicalSemifield;
  const auto one_half = TropicalWeight::of(Rational(1, 2));
  const auto three = TropicalWeight::of(Rational(3));
  CHECK(T::equal(T::plus(one_half, three), one_half));
  CHECK(T::equal(T::times(one_half, three), TropicalWeight::of(Rational(7, 2))));
  CHECK(T::equal(T::inverse(three), TropicalWeight::of(Rational(-3))));
  CHECK(T::less(three, T::zero()));
  CHECK(T::format(T::parse("2/4")) == "0.5");
}

TEST_CASE("parse a minimal automaton") {
  const Automaton a = parse_unweighted("init 0\nfinal 1\ntrans 0 a 1\n");
  CHECK(a.num_states() == 2);
  CHECK(a.transitions().size() == 1);
  CHECK(serialize_automaton(a) == "fsa 2 bool\nalphabet a\ninit 0\nfinal 1\ntrans 0 a 1\n");
}

TEST_CASE("parse errors cite lines") {
  try {
    parse_unweighted("fsa 3 bool\ninit 0\ntrans 0 a 5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_automaton("fsa 2 tropical\ntrans 0 a 1 1\ntrans 0 a 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("fsa 2 tropical\ntrans 0 a zz 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("fsa 2 tropical\ninit 0 inf\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("bogus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("fsa 2 bool\ntrans 0 a 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_automaton("fsa 2 bool\nalphabet a\ntrans 0 b 1\n"), ParseError);
}

TEST_CASE("comments, duplicates and directive order") {
  const Automaton a = parse_unweighted(
      "# leading comment\n"
      "trans 1 b 0   # trailing\n"
      "trans 0 a 1\n"
      "trans 0 a 1\n"
      "final 1\n"
      "init 0\n");
  CHECK(a.transitions().size() == 2);
  CHECK(a.alphabet() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("weighted serialization uses decimal weights") {
  const TropicalAutomaton w = parse_tropical("fsa 2 tropical\ninit 0 0\nfinal 1 0\ntrans 0 a 1.5 1\n");
  const std::string text = serialize_automaton(w);
  CHECK(text.find("trans 0 a 1.5 1\n") != std::string::npos);
  CHECK(parse_tropical(text) == w);
}

TEST_CASE("gen_moore(3) matches the blow-up automaton") {
  const Automaton m = parse_unweighted(serialize_automaton(gen_moore(3)));
  CHECK(m.num_states() == 3);
  CHECK(m.transitions().size() == 6);
  const auto mats = transition_matrices(m);
  const LabelId a = *m.label_of("a");
  const LabelId b = *m.label_of("b");
  CHECK(mats[a] == BoolMatrix::from_rows({"010", "001", "110"}));
  CHECK(mats[b] == BoolMatrix::from_rows({"100", "001", "000"}));
}

TEST_CASE("round trip over generated automata") {
  CHECK(parse_unweighted(serialize_automaton(gen_moore(2))) == gen_moore(2));
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Automaton a = oracle::random_automaton(1 + rng.below(7), 1 + rng.below(3), rng);
    CHECK(parse_unweighted(serialize_automaton(a)) == a);
    const TropicalAutomaton w = gen_tropical_random(2 + rng.below(5), 1 + rng.below(3), rng.next());
    CHECK(parse_tropical(serialize_automaton(w)) == w);
  }
}

TEST_CASE("transition matrices") {
  const Automaton cycle = Automaton::from_edges(2, {0}, {0}, {{0, "a", 1}, {1, "a", 0}});
  CHECK(transition_matrices(cycle)[0] == BoolMatrix::from_rows({"01", "10"}));
  const Automaton no_a = Automaton::from_edges(2, {0}, {1}, {{0, "b", 1}}, {"a"});
  CHECK(transition_matrices(no_a)[*no_a.label_of("a")].is_zero());
  const Automaton eps = Automaton::from_edges(2, {0}, {1}, {{0, "EPS", 1}});
  CHECK_THROWS_AS(transition_matrices(eps), std::invalid_argument);
}

TEST_CASE("epsilon removal") {
  SUBCASE("epsilon-only automaton") {
    const Automaton a = Automaton::from_edges(2, {0}, {1}, {{0, "EPS", 1}});
    const Automaton r = remove_epsilon(a);
    CHECK(r.is_final(0));
    CHECK(r.transitions().empty());
    CHECK_FALSE(r.has_epsilon());
  }
  SUBCASE("epsilon-free input is unchanged") {
    const Automaton a = gen_moore(4);
    CHECK(remove_epsilon(a) == a);
  }
  SUBCASE("chain") {
    const Automaton a = Automaton::from_edges(3, {0}, {2}, {{0, "EPS", 1}, {1, "a", 2}});
    const Automaton r = remove_epsilon(a);
    const auto succ = r.successors(0, *r.label_of("a"));
    CHECK(std::find(succ.begin(), succ.end(), StateId{2}) != succ.end());
    CHECK(oracle_language_eq(a, r, 4));
  }
  SUBCASE("language preserved on random automata with epsilon moves") {
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
      const std::size_t n = 1 + rng.below(8);
      std::vector<Edge> edges;
      for (StateId p = 0; p < n; ++p)
        for (StateId q = 0; q < n; ++q) {
          if (rng.below(4) == 0) edges.push_back({p, "a", q});
          if (rng.below(4) == 0) edges.push_back({p, "b", q});
          if (rng.below(6) == 0) edges.push_back({p, "EPS", q});
        }
      const Automaton a = Automaton::from_edges(n, rng.nonempty_states(n), rng.nonempty_states(n), edges, {"a", "b"});
      const Automaton r = remove_epsilon(a);
      CHECK_FALSE(r.has_epsilon());
      CHECK(oracle_language_eq(a, r, 6));
    }
  }
}

TEST_CASE("weighted automaton validation") {
  using T = TropicalSemifield;
  const auto w0 = TropicalWeight::of(0);
  CHECK_THROWS_AS(TropicalAutomaton({"a"}, 2, {{0, w0}}, {}, {{0, 0, 1, w0}, {0, 0, 1, w0}}), std::invalid_argument);
  CHECK_THROWS_AS(TropicalAutomaton({"a"}, 2, {{0, w0}, {0, w0}}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(TropicalAutomaton({"a"}, 2, {{3, w0}}, {}, {}), std::invalid_argument);
  const TropicalAutomaton w({"a"}, 2, {{0, w0}}, {{1, w0}}, {{0, 0, 1, T::zero()}});
  CHECK(w.transitions().empty());
  CHECK(skeleton(lift<T>(gen_moore(3))) == gen_moore(3));
}

TEST_CASE("determinism and isomorphism predicates") {
  const Automaton chain = Automaton::from_edges(3, {0}, {2}, {{0, "a", 1}, {1, "a", 2}});
  CHECK(is_deterministic(chain));
  CHECK_FALSE(is_deterministic(gen_moore(3)));
  const Automaton renamed = Automaton::from_edges(3, {2}, {0}, {{2, "a", 1}, {1, "a", 0}});
  CHECK(isomorphic(chain, renamed));
  const Automaton other = Automaton::from_edges(3, {0}, {1}, {{0, "a", 1}, {1, "a", 2}});
  CHECK_FALSE(isomorphic(chain, other));
}
