#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detlab/automaton.hpp"
#include "detlab/bool_matrix.hpp"
#include "detlab/determinize.hpp"
#include "detlab/semifield.hpp"

namespace detlab {

/// Least k >= 1 with B^(k+d) = B^k for some d >= 1, and the least such d.
struct IndexPeriod {
  std::size_t index = 1;
  std::size_t period = 1;

  friend bool operator==(const IndexPeriod&, const IndexPeriod&) = default;
};

/// Cycle detection (Brent) on the power orbit B, B^2, B^3, ...
/// Throws std::logic_error if the index exceeds n^2 - 2n + 2, which cannot
/// happen for a correct computation.
IndexPeriod index_period(const BoolMatrix& b);

/// The precedence graph is strongly connected.
bool is_irreducible(const BoolMatrix& b);

/// gcd of cycle lengths of a strongly connected precedence graph (1 for a
/// graph without edges). For irreducible matrices this equals the period.
/// Throws std::invalid_argument when b is not irreducible.
std::size_t cyclicity(const BoolMatrix& b);

enum class IndecomposabilityRoute {
  kUnitDiagonal,     // diagonal already all ones; r-connectivity tested directly
  kMatchedDiagonal,  // columns permuted by a perfect matching first
  kNoMatching,       // no perfect matching: a zero block with s + t > n exists
};

struct IndecomposabilityVerdict {
  bool indecomposable = false;
  IndecomposabilityRoute route = IndecomposabilityRoute::kUnitDiagonal;
};

/// Decides r-indecomposability (r >= 1). The columns are permuted so the
/// diagonal is all ones, then the precedence graph is tested for
/// r-connectivity with vertex-disjoint path counting.
IndecomposabilityVerdict indecomposability_verdict(const BoolMatrix& b, std::size_t r);
bool indecomposability(const BoolMatrix& b, std::size_t r);

/// Largest r in [1, n-1] for which b is r-indecomposable, 0 if none.
std::size_t max_indecomposability(const BoolMatrix& b);

/// Every pair of matrices commutes.
bool is_commutative(const std::vector<BoolMatrix>& mats);

struct TreeWidth {
  bool finite = false;
  std::optional<std::uint64_t> value;
  bool fuel_hit = false;
};

/// Some transition leaving a reachable state is non-deterministic (its
/// source has two or more successors on its label) and lies on a directed
/// cycle.
bool has_nondeterministic_cycle(const Automaton& a);

/// Tree width: the maximum over words of the number of paths from the
/// initial states with that yield. Finite iff has_nondeterministic_cycle is
/// false; the value is then found by exploring the finite set of reachable
/// path-count vectors, at most `fuel` of them.
TreeWidth tree_width_analysis(const Automaton& a, std::size_t fuel = 100000);

struct BoundRow {
  std::string rule;
  bool applicable = false;
  BigInt bound = 0;
  std::string note;
  std::optional<bool> pass;  // set by verify_bounds when applicable and verifiable
};

struct SymbolIndecomposability {
  std::string symbol;
  std::size_t max_r = 0;
  IndecomposabilityRoute route = IndecomposabilityRoute::kUnitDiagonal;
};

struct OneLetter {
  IndexPeriod index_period;
  bool irreducible = false;
};

struct AnalysisReport {
  std::size_t n = 0;
  std::size_t sigma = 0;
  bool is_deterministic = false;
  std::optional<OneLetter> one_letter;
  std::vector<bool> irreducible;  // per symbol, alphabet order
  bool all_irreducible = false;
  bool commutative = false;
  std::vector<SymbolIndecomposability> indecomposability;
  std::size_t density = 0;  // fewest non-zeros over the transition matrices
  TreeWidth tree_width;
  std::optional<std::size_t> monoid_size;  // set when the closure completed
  std::vector<BoundRow> predicted_bounds;
  std::optional<std::size_t> actual_det_states;
  bool det_terminated = true;

  const BoundRow* find(const std::string& rule) const;
  /// No applicable, verified bound is violated.
  bool all_pass() const;
};

struct AnalysisOptions {
  std::size_t monoid_fuel = 100000;
  std::size_t tree_width_fuel = 100000;
};

/// Runs every detector on an epsilon-free automaton and emits the bound rules:
/// one_letter_irreducible, commutative_irreducible, indecomposable,
/// finite_tree_width, tree_width_binomial, universal.
AnalysisReport predict_bounds(const Automaton& a, const AnalysisOptions& options = {});

/// predict_bounds followed by determinization; records pass/fail for every
/// applicable rule. A fuel-exhausted run leaves every rule unverified.
AnalysisReport verify_bounds(const Automaton& a, Fuel fuel, const AnalysisOptions& options = {});

/// Exact sum of C(n, i) for i = 0..k.
BigInt binomial_prefix_sum(std::size_t n, std::size_t k);

std::string route_name(IndecomposabilityRoute route);
std::string format_report_text(const AnalysisReport& report);
/// Header plus one row per rule: rule, applicable, bound, actual, pass.
std::string format_report_tsv(const AnalysisReport& report);

}  // namespace detlab
