#include "detlab/gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "detlab/analysis.hpp"

namespace detlab {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Largest multiple of bound representable; draws at or above it are retried.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

std::vector<std::size_t> Rng::subset(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("Rng::subset: k exceeds n");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<StateId> Rng::nonempty_states(std::size_t n) {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < n; ++q)
    if (coin()) out.push_back(static_cast<StateId>(q));
  if (out.empty()) out.push_back(static_cast<StateId>(below(n)));
  return out;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kMoore:
      return "moore";
    case Family::kOneLetterIrreducible:
      return "one_letter_irreducible";
    case Family::kCommutative:
      return "commutative";
    case Family::kIndecomposable:
      return "indecomposable";
    case Family::kDense:
      return "dense";
    case Family::kFiniteTreeWidth:
      return "finite_tw";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kMoore, Family::kOneLetterIrreducible, Family::kCommutative, Family::kIndecomposable,
                   Family::kDense, Family::kFiniteTreeWidth})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

std::vector<std::string> symbol_names(std::size_t sigma) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sigma; ++i)
    names.push_back(sigma <= 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
  return names;
}

namespace {

void require_states(std::size_t n, const char* who) {
  if (n < 2) throw std::invalid_argument(std::string(who) + ": n must be at least 2");
}

Automaton from_matrices(const std::vector<BoolMatrix>& mats, const std::vector<StateId>& initial,
                        const std::vector<StateId>& finals) {
  const std::size_t n = mats.empty() ? 0 : mats.front().dim();
  std::vector<Transition> transitions;
  for (std::size_t label = 0; label < mats.size(); ++label)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mats[label].get(i, j))
          transitions.push_back({static_cast<StateId>(i), static_cast<LabelId>(label), static_cast<StateId>(j)});
  return Automaton(symbol_names(mats.size()), n, initial, finals, std::move(transitions));
}

BoolMatrix random_irreducible(std::size_t n, Rng& rng) {
  BoolMatrix m(n);
  const auto cycle = rng.permutation(n);
  for (std::size_t i = 0; i < n; ++i) m.set(cycle[i], cycle[(i + 1) % n]);
  const std::size_t extra = rng.between(0, n);
  for (std::size_t e = 0; e < extra; ++e) m.set(rng.below(n), rng.below(n));
  return m;
}

}  // namespace

Automaton gen_moore(std::size_t n) {
  require_states(n, "gen_moore");
  std::vector<Edge> edges{{0, "b", 0}, {0, "a", 1}};
  for (StateId i = 1; i + 1 < n; ++i) {
    edges.push_back({i, "a", i + 1});
    edges.push_back({i, "b", i + 1});
  }
  const StateId last = static_cast<StateId>(n - 1);
  edges.push_back({last, "a", 0});
  edges.push_back({last, "a", 1});
  return Automaton::from_edges(n, {0}, {last}, edges);
}

Automaton gen_one_letter_irreducible(std::size_t n, std::uint64_t seed) {
  require_states(n, "gen_one_letter_irreducible");
  Rng rng(seed);
  const BoolMatrix m = random_irreducible(n, rng);
  const auto initial = rng.nonempty_states(n);
  const auto finals = rng.nonempty_states(n);
  return from_matrices({m}, initial, finals);
}

Automaton gen_commutative(std::size_t n, std::size_t sigma, std::uint64_t seed) {
  require_states(n, "gen_commutative");
  if (sigma < 2) throw std::invalid_argument("gen_commutative: sigma must be at least 2");
  Rng rng(seed);
  std::vector<BoolMatrix> mats{random_irreducible(n, rng)};
  for (std::size_t i = 1; i < sigma; ++i) {
    const std::size_t k = rng.between(1, n);
    BoolMatrix p = mats[0];
    for (std::size_t j = 1; j < k; ++j) p = bool_matmul(p, mats[0]);
    mats.push_back(std::move(p));
  }
  const auto initial = rng.nonempty_states(n);
  const auto finals = rng.nonempty_states(n);
  return from_matrices(mats, initial, finals);
}

std::size_t indecomposable_density(std::size_t n, std::size_t r) {
  const double spread = std::ceil(static_cast<double>(1 + r) * static_cast<double>(n) * std::log(static_cast<double>(n)));
  const std::size_t m = std::max(n * (1 + r), static_cast<std::size_t>(spread));
  return std::min(m, n * n);
}

Automaton gen_indecomposable(std::size_t n, std::size_t sigma, std::size_t r, std::uint64_t seed,
                             std::size_t max_tries) {
  require_states(n, "gen_indecomposable");
  if (r < 1 || r > n - 1) throw std::invalid_argument("gen_indecomposable: r must lie in [1, n-1]");
  if (sigma < 1) throw std::invalid_argument("gen_indecomposable: sigma must be at least 1");
  Rng rng(seed);
  const std::size_t density = indecomposable_density(n, r);
  // Off-diagonal cells, enumerated row-major skipping the diagonal.
  const std::size_t off_cells = n * n - n;
  std::vector<BoolMatrix> mats;
  for (std::size_t label = 0; label < sigma; ++label) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < max_tries && !found; ++attempt) {
      BoolMatrix m = BoolMatrix::identity(n);
      for (std::size_t cell : rng.subset(off_cells, density - n)) {
        const std::size_t i = cell / (n - 1);
        std::size_t j = cell % (n - 1);
        if (j >= i) ++j;
        m.set(i, j);
      }
      if (indecomposability(m, r)) {
        mats.push_back(std::move(m));
        found = true;
      }
    }
    if (!found)
      throw std::runtime_error("generation failed: no " + std::to_string(r) + "-indecomposable matrix in " +
                               std::to_string(max_tries) + " tries at density " + std::to_string(density) + "/" +
                               std::to_string(n * n));
  }
  const auto initial = rng.nonempty_states(n);
  const auto finals = rng.nonempty_states(n);
  return from_matrices(mats, initial, finals);
}

Automaton gen_dense(std::size_t n, std::size_t sigma, std::size_t d, std::uint64_t seed, bool correlated) {
  require_states(n, "gen_dense");
  if (sigma < 1) throw std::invalid_argument("gen_dense: sigma must be at least 1");
  if (d < 1 || n * n / d < n)
    throw std::invalid_argument("gen_dense: infeasible non-zero count floor(n^2/d) = " +
                                std::to_string(d == 0 ? 0 : n * n / d) + " (need at least n = " + std::to_string(n) +
                                ")");
  Rng rng(seed);
  const std::size_t nonzeros = n * n / d;
  auto draw = [&] {
    BoolMatrix m(n);
    for (std::size_t cell : rng.subset(n * n, nonzeros)) m.set(cell / n, cell % n);
    return m;
  };
  std::vector<BoolMatrix> mats;
  for (std::size_t label = 0; label < sigma; ++label) mats.push_back(correlated && label > 0 ? mats[0] : draw());
  const auto initial = rng.nonempty_states(n);
  const auto finals = rng.nonempty_states(n);
  return from_matrices(mats, initial, finals);
}

Automaton gen_finite_tw(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t sigma) {
  require_states(n, "gen_finite_tw");
  if (k < 1 || k > n - 1) throw std::invalid_argument("gen_finite_tw: k must lie in [1, n-1]");
  if (sigma < 1) throw std::invalid_argument("gen_finite_tw: sigma must be at least 1");
  Rng rng(seed);

  // Chain p_0 .. p_{L-1}, cyclic part c_0 .. c_{C-1}, C = n - L >= 1. Branch
  // sites are chain positions; the last chain state can only branch when the
  // cyclic part offers two distinct targets.
  auto sites = [&](std::size_t len) { return (len - 1) + (n - len >= 2 ? 1 : 0); };
  std::vector<std::size_t> lengths;
  for (std::size_t len = 1; len + 1 <= n; ++len)
    if (sites(len) >= k - 1) lengths.push_back(len);
  if (lengths.empty()) throw std::invalid_argument("gen_finite_tw: k too large for n");
  const std::size_t chain = lengths[rng.below(lengths.size())];
  const std::size_t cyc = n - chain;

  const auto relabel = rng.permutation(n);
  auto p = [&](std::size_t i) { return static_cast<StateId>(relabel[i]); };
  auto c = [&](std::size_t i) { return static_cast<StateId>(relabel[chain + i]); };

  std::vector<Transition> transitions;
  // Total deterministic cyclic part.
  for (std::size_t i = 0; i < cyc; ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      transitions.push_back({c(i), static_cast<LabelId>(a), c(rng.below(cyc))});
  // Chain: one forward symbol per position; the last position enters the
  // cyclic part on that symbol.
  std::vector<LabelId> forward(chain);
  std::vector<StateId> forward_target(chain);
  for (std::size_t i = 0; i < chain; ++i) {
    forward[i] = static_cast<LabelId>(rng.below(sigma));
    forward_target[i] = i + 1 < chain ? p(i + 1) : c(rng.below(cyc));
    transitions.push_back({p(i), forward[i], forward_target[i]});
    // Other symbols exit deterministically into the cyclic part or nowhere.
    for (std::size_t a = 0; a < sigma; ++a)
      if (a != forward[i] && rng.coin()) transitions.push_back({p(i), static_cast<LabelId>(a), c(rng.below(cyc))});
  }
  const std::size_t site_count = sites(chain);
  for (std::size_t s : rng.subset(site_count, k - 1)) {
    StateId target = c(rng.below(cyc));
    while (target == forward_target[s]) target = c(rng.below(cyc));
    transitions.push_back({p(s), forward[s], target});
  }
  const auto finals = rng.nonempty_states(n);
  return Automaton(symbol_names(sigma), n, {p(0)}, finals, std::move(transitions));
}

Automaton generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::kMoore:
      return gen_moore(spec.n);
    case Family::kOneLetterIrreducible:
      return gen_one_letter_irreducible(spec.n, spec.seed);
    case Family::kCommutative:
      return gen_commutative(spec.n, spec.sigma, spec.seed);
    case Family::kIndecomposable:
      return gen_indecomposable(spec.n, spec.sigma, spec.r, spec.seed, spec.max_tries);
    case Family::kDense:
      return gen_dense(spec.n, spec.sigma, spec.d, spec.seed, spec.correlated);
    case Family::kFiniteTreeWidth:
      return gen_finite_tw(spec.n, spec.k, spec.seed, spec.sigma);
  }
  throw std::invalid_argument("generate: unknown family");
}

namespace {

TropicalWeight small_weight(Rng& rng) {
  return TropicalWeight::of(Rational(static_cast<long>(rng.below(9)), static_cast<long>(1 + rng.below(2))));
}

TropicalAutomaton random_tropical(std::size_t n, std::size_t sigma, Rng& rng, bool acyclic) {
  using Entry = TropicalAutomaton::Entry;
  std::vector<WeightedTransition<TropicalSemifield>> transitions;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t j = acyclic ? i + 1 : 0; j < n; ++j)
        if (rng.below(3) == 0)
          transitions.push_back({static_cast<StateId>(i), static_cast<LabelId>(a), static_cast<StateId>(j),
                                 small_weight(rng)});
  std::vector<Entry> initial, finals;
  for (StateId q : rng.nonempty_states(n)) initial.emplace_back(q, small_weight(rng));
  for (StateId q : rng.nonempty_states(n)) finals.emplace_back(q, small_weight(rng));
  return TropicalAutomaton(symbol_names(sigma), n, std::move(initial), std::move(finals), std::move(transitions));
}

}  // namespace

TropicalAutomaton gen_tropical_acyclic(std::size_t n, std::size_t sigma, std::uint64_t seed) {
  require_states(n, "gen_tropical_acyclic");
  Rng rng(seed);
  return random_tropical(n, sigma, rng, true);
}

TropicalAutomaton gen_tropical_random(std::size_t n, std::size_t sigma, std::uint64_t seed) {
  require_states(n, "gen_tropical_random");
  Rng rng(seed);
  return random_tropical(n, sigma, rng, false);
}

TropicalAutomaton divergent_tropical() {
  using T = TropicalSemifield;
  auto w = [](long v) { return TropicalWeight::of(Rational(v)); };
  // States q0..q3; alphabet a, b, c.
  std::vector<WeightedTransition<T>> transitions{
      {0, 0, 1, w(1)}, {0, 0, 2, w(3)}, {1, 0, 1, w(1)}, {2, 0, 2, w(2)}, {1, 1, 3, w(0)}, {2, 2, 3, w(0)},
  };
  return TropicalAutomaton({"a", "b", "c"}, 4, {{0, w(0)}}, {{3, w(0)}}, std::move(transitions));
}

OraclePowerset oracle_powerset(const Automaton& a) {
  if (a.has_epsilon()) throw std::invalid_argument("oracle_powerset: automaton has epsilon transitions");
  using Subset = std::set<StateId>;
  std::map<Subset, StateId> ids;
  std::vector<Subset> order;
  std::deque<Subset> queue;
  std::vector<Transition> transitions;

  Subset start;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_initial(q)) start.insert(q);
  ids[start] = 0;
  order.push_back(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const Subset s = queue.front();
    queue.pop_front();
    for (LabelId label = 0; label < a.sigma(); ++label) {
      Subset next;
      for (const auto& t : a.transitions())
        if (t.label == label && s.count(t.src)) next.insert(t.dst);
      auto [it, inserted] = ids.emplace(next, static_cast<StateId>(order.size()));
      if (inserted) {
        order.push_back(next);
        queue.push_back(next);
      }
      transitions.push_back({ids.at(s), label, it->second});
    }
  }

  OraclePowerset out;
  std::vector<StateId> finals;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (StateId q : order[i])
      if (a.is_final(q)) {
        finals.push_back(static_cast<StateId>(i));
        break;
      }
    out.subsets.emplace_back(order[i].begin(), order[i].end());
  }
  out.det = Automaton(a.alphabet(), order.size(), {0}, finals, std::move(transitions));
  return out;
}

bool oracle_accepts(const Automaton& a, const Word& word) {
  // Depth-first search over (state, position), each pair visited once.
  std::set<std::pair<StateId, std::size_t>> visited;
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_initial(q)) stack.emplace_back(q, 0);
  while (!stack.empty()) {
    auto [q, pos] = stack.back();
    stack.pop_back();
    if (!visited.insert({q, pos}).second) continue;
    if (pos == word.size() && a.is_final(q)) return true;
    for (const auto& t : a.transitions()) {
      if (t.src != q) continue;
      if (t.label == kEpsilon)
        stack.emplace_back(t.dst, pos);
      else if (pos < word.size() && t.label == word[pos])
        stack.emplace_back(t.dst, pos + 1);
    }
  }
  return false;
}

bool oracle_language_eq(const Automaton& x, const Automaton& y, std::size_t max_len) {
  if (x.alphabet() != y.alphabet()) return false;
  const std::size_t sigma = x.sigma();
  Word word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    word.assign(len, 0);
    while (true) {
      if (oracle_accepts(x, word) != oracle_accepts(y, word)) return false;
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
