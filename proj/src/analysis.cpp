#include "detlab/analysis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "detlab/graph.hpp"
#include "detlab/monoid.hpp"

namespace detlab {

IndexPeriod index_period(const BoolMatrix& b) {
  const std::size_t n = b.dim();
  auto step = [&](const BoolMatrix& m) { return bool_matmul(m, b); };

  // Brent: find the cycle length first, then the tail length.
  std::size_t power = 1, lambda = 1;
  BoolMatrix tortoise = b;
  BoolMatrix hare = step(b);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = step(hare);
    ++lambda;
  }
  tortoise = b;
  hare = b;
  for (std::size_t i = 0; i < lambda; ++i) hare = step(hare);
  std::size_t mu = 0;
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }

  IndexPeriod out{mu + 1, lambda};
  const std::size_t max_index = n == 0 ? 1 : n * n - 2 * n + 2;
  if (out.index > max_index)
    throw std::logic_error("index_period: index " + std::to_string(out.index) + " exceeds n^2 - 2n + 2");
  return out;
}

bool is_irreducible(const BoolMatrix& b) {
  if (b.dim() == 0) return true;
  // A 1x1 zero matrix has no cycle and counts as reducible.
  if (b.dim() == 1) return b.get(0, 0);
  return graph::strongly_connected_components(b).count == 1;
}

std::size_t cyclicity(const BoolMatrix& b) {
  if (!is_irreducible(b)) throw std::invalid_argument("cyclicity: matrix is not irreducible");
  const std::size_t n = b.dim();
  if (n == 0) return 1;
  std::vector<long> level(n, -1);
  std::deque<std::size_t> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v)
      if (b.get(u, v) && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (b.get(u, v)) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
  return g == 0 ? 1 : static_cast<std::size_t>(g);
}

IndecomposabilityVerdict indecomposability_verdict(const BoolMatrix& b, std::size_t r) {
  if (r == 0) throw std::invalid_argument("indecomposability: r must be at least 1");
  if (b.diagonal_all_ones()) return {graph::is_r_connected(b, r), IndecomposabilityRoute::kUnitDiagonal};
  auto matching = graph::perfect_matching(b);
  if (!matching) return {false, IndecomposabilityRoute::kNoMatching};
  // Column j of the permuted matrix is column matching[j] of b, so entry
  // (i, i) becomes b(i, matching[i]) = 1.
  const BoolMatrix permuted = b.permute_columns(*matching);
  return {graph::is_r_connected(permuted, r), IndecomposabilityRoute::kMatchedDiagonal};
}

bool indecomposability(const BoolMatrix& b, std::size_t r) { return indecomposability_verdict(b, r).indecomposable; }

std::size_t max_indecomposability(const BoolMatrix& b) {
  const std::size_t n = b.dim();
  if (n < 2 || !indecomposability(b, 1)) return 0;
  std::size_t lo = 1, hi = n - 1;  // lo certified
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (indecomposability(b, mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

bool is_commutative(const std::vector<BoolMatrix>& mats) {
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (bool_matmul(mats[i], mats[j]) != bool_matmul(mats[j], mats[i])) return false;
  return true;
}

bool has_nondeterministic_cycle(const Automaton& a) {
  if (a.has_epsilon()) throw std::invalid_argument("has_nondeterministic_cycle: automaton has epsilon transitions");
  BoolMatrix adjacency(a.num_states());
  for (const auto& t : a.transitions()) adjacency.set(t.src, t.dst);
  const auto scc = graph::strongly_connected_components(adjacency);
  const BitSet reachable = accessible_states(a);
  for (const auto& t : a.transitions()) {
    if (!reachable.test(t.src)) continue;
    if (a.successors(t.src, t.label).size() < 2) continue;
    if (scc.component[t.src] == scc.component[t.dst]) return true;
  }
  return false;
}

TreeWidth tree_width_analysis(const Automaton& a, std::size_t fuel) {
  TreeWidth out;
  out.finite = !has_nondeterministic_cycle(a);
  if (!out.finite) return out;

  const std::size_t n = a.num_states();
  using Counts = std::vector<std::uint64_t>;
  auto saturating_add = [](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t s = x + y;
    return s < x ? ~std::uint64_t{0} : s;
  };
  auto total = [&](const Counts& v) {
    std::uint64_t s = 0;
    for (auto c : v) s = saturating_add(s, c);
    return s;
  };

  Counts start(n, 0);
  a.initial().for_each([&](StateId q) { start[q] = 1; });
  std::set<Counts> seen{start};
  std::deque<Counts> queue{start};
  std::uint64_t best = total(start);
  while (!queue.empty()) {
    Counts v = std::move(queue.front());
    queue.pop_front();
    for (LabelId label = 0; label < a.sigma(); ++label) {
      Counts next(n, 0);
      for (StateId q = 0; q < n; ++q) {
        if (v[q] == 0) continue;
        for (StateId r : a.successors(q, label)) next[r] = saturating_add(next[r], v[q]);
      }
      if (seen.contains(next)) continue;
      if (seen.size() >= fuel) {
        out.fuel_hit = true;
        return out;
      }
      best = std::max(best, total(next));
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  out.value = best;
  return out;
}

BigInt binomial_prefix_sum(std::size_t n, std::size_t k) {
  BigInt sum = 0, term = 1;  // term = C(n, i)
  for (std::size_t i = 0; i <= std::min(n, k); ++i) {
    sum += term;
    term = term * (n - i) / (i + 1);
  }
  return sum;
}

namespace {

BigInt ipow(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt factorial(std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

const BoundRow* AnalysisReport::find(const std::string& rule) const {
  for (const auto& row : predicted_bounds)
    if (row.rule == rule) return &row;
  return nullptr;
}

bool AnalysisReport::all_pass() const {
  return std::none_of(predicted_bounds.begin(), predicted_bounds.end(),
                      [](const BoundRow& row) { return row.pass.has_value() && !*row.pass; });
}

AnalysisReport predict_bounds(const Automaton& a, const AnalysisOptions& options) {
  if (a.has_epsilon()) throw std::invalid_argument("predict_bounds: automaton has epsilon transitions");
  AnalysisReport report;
  const std::size_t n = a.num_states();
  const std::size_t sigma = a.sigma();
  report.n = n;
  report.sigma = sigma;
  report.is_deterministic = is_deterministic(a);

  const auto mats = transition_matrices(a);
  report.all_irreducible = true;
  report.density = mats.empty() ? 0 : n * n;
  for (LabelId label = 0; label < sigma; ++label) {
    const bool irr = is_irreducible(mats[label]);
    report.irreducible.push_back(irr);
    report.all_irreducible = report.all_irreducible && irr;
    report.density = std::min(report.density, mats[label].nonzeros());
    SymbolIndecomposability ind;
    ind.symbol = a.alphabet()[label];
    ind.max_r = max_indecomposability(mats[label]);
    if (n >= 2) ind.route = indecomposability_verdict(mats[label], 1).route;
    report.indecomposability.push_back(ind);
  }
  if (sigma == 1) {
    OneLetter one{index_period(mats[0]), report.irreducible[0]};
    if (one.irreducible && one.index_period.period != cyclicity(mats[0]))
      throw std::logic_error("predict_bounds: period of an irreducible matrix differs from its cyclicity");
    report.one_letter = one;
  }
  report.commutative = is_commutative(mats);
  report.tree_width = tree_width_analysis(a, options.tree_width_fuel);
  const auto closure = monoid_closure(n, mats, options.monoid_fuel);
  if (closure.complete) report.monoid_size = closure.size();

  auto& rows = report.predicted_bounds;
  {
    BoundRow row{"one_letter_irreducible", sigma == 1 && report.all_irreducible, 0, "n^2 - n + 2", {}};
    if (row.applicable) row.bound = BigInt(n * n - n + 2);
    rows.push_back(row);
  }
  {
    BoundRow row{"commutative_irreducible", sigma >= 1 && report.commutative && report.all_irreducible, 0,
                 "n^(2|Sigma|)", {}};
    if (row.applicable) row.bound = ipow(n, 2 * sigma);
    rows.push_back(row);
  }
  {
    std::size_t r = 0;
    if (sigma >= 1 && n >= 2) {
      r = n;
      for (const auto& ind : report.indecomposability) r = std::min(r, ind.max_r);
    }
    BoundRow row{"indecomposable", r >= 1, 0, "", {}};
    if (row.applicable) {
      const std::size_t c = (n - 1 + r - 1) / r;
      if (sigma == 1)
        row.bound = BigInt(c + 1);
      else
        row.bound = ipow(sigma, c) / (sigma - 1) + 1;
      row.note = "r=" + std::to_string(r) + " ceil((n-1)/r)=" + std::to_string(c);
    }
    rows.push_back(row);
  }
  {
    const auto& tw = report.tree_width;
    const bool known = tw.finite && tw.value.has_value();
    const std::uint64_t k = known ? *tw.value : 0;
    BoundRow stated{"finite_tree_width", known && k >= 1 && k + 1 <= n, 0, "", {}};
    BoundRow binomial{"tree_width_binomial", known, 0, "", {}};
    if (known) {
      binomial.bound = binomial_prefix_sum(n, static_cast<std::size_t>(std::min<std::uint64_t>(k, n)));
      binomial.note = "k=" + std::to_string(k);
    }
    if (stated.applicable) {
      stated.bound = ipow(n, k) / factorial(k - 1) + 1;
      stated.note = "k=" + std::to_string(k);
      if (stated.bound < binomial.bound) stated.note += " below-binomial-sum";
    }
    rows.push_back(stated);
    rows.push_back(binomial);
  }
  {
    BoundRow row{"universal", true, ipow(2, n), "2^n", {}};
    if (report.monoid_size && BigInt(*report.monoid_size) < row.bound) {
      row.bound = *report.monoid_size;
      row.note = "monoid size";
    }
    rows.push_back(row);
  }
  return report;
}

AnalysisReport verify_bounds(const Automaton& a, Fuel fuel, const AnalysisOptions& options) {
  AnalysisReport report = predict_bounds(a, options);
  const DetResult det = determinize(a, fuel);
  report.det_terminated = det.terminated;
  if (!det.terminated) return report;
  report.actual_det_states = det.det.num_states();
  for (auto& row : report.predicted_bounds)
    if (row.applicable) row.pass = row.bound >= BigInt(*report.actual_det_states);
  return report;
}

std::string route_name(IndecomposabilityRoute route) {
  switch (route) {
    case IndecomposabilityRoute::kUnitDiagonal:
      return "unit-diagonal";
    case IndecomposabilityRoute::kMatchedDiagonal:
      return "matched-diagonal";
    case IndecomposabilityRoute::kNoMatching:
      return "no-perfect-matching";
  }
  return "unknown";
}

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_report_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "states: " << r.n << '\n';
  out << "alphabet_size: " << r.sigma << '\n';
  out << "deterministic: " << yes_no(r.is_deterministic) << '\n';
  if (r.one_letter)
    out << "one_letter: index=" << r.one_letter->index_period.index << " period=" << r.one_letter->index_period.period
        << " irreducible=" << yes_no(r.one_letter->irreducible) << '\n';
  out << "irreducible:";
  for (std::size_t i = 0; i < r.indecomposability.size(); ++i)
    out << ' ' << r.indecomposability[i].symbol << '=' << yes_no(r.irreducible[i]);
  out << '\n';
  out << "commutative: " << yes_no(r.commutative) << '\n';
  out << "indecomposability:";
  for (const auto& ind : r.indecomposability) out << ' ' << ind.symbol << "=r" << ind.max_r << '(' << route_name(ind.route) << ')';
  out << '\n';
  out << "density: " << r.density << '\n';
  out << "tree_width: finite=" << yes_no(r.tree_width.finite);
  if (r.tree_width.value) out << " value=" << *r.tree_width.value;
  if (r.tree_width.fuel_hit) out << " fuel_hit=true";
  // Tree width is either bounded by a constant or grows at least linearly;
  // only the first regime yields a polynomial bound.
  out << " regime=" << (r.tree_width.finite ? "constant" : "unbounded") << '\n';
  out << "monoid_size: " << (r.monoid_size ? std::to_string(*r.monoid_size) : "incomplete") << '\n';
  if (r.actual_det_states) out << "det_states: " << *r.actual_det_states << '\n';
  if (!r.det_terminated) out << "det_states: fuel-exhausted\n";
  for (const auto& row : r.predicted_bounds) {
    out << "bound " << row.rule << " applicable=" << yes_no(row.applicable);
    if (row.applicable) out << " value=" << row.bound.str();
    if (row.pass) out << " pass=" << yes_no(*row.pass);
    if (!row.note.empty() && row.applicable) out << " (" << row.note << ')';
    out << '\n';
  }
  return out.str();
}

std::string format_report_tsv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "rule\tapplicable\tbound\tactual\tpass\n";
  for (const auto& row : r.predicted_bounds) {
    out << row.rule << '\t' << yes_no(row.applicable) << '\t' << (row.applicable ? row.bound.str() : "-") << '\t'
        << (r.actual_det_states ? std::to_string(*r.actual_det_states) : "-") << '\t'
        << (row.pass ? yes_no(*row.pass) : "-") << '\n';
  }
  return out.str();
}

}  // namespace detlab
