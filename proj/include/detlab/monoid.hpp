#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "detlab/automaton.hpp"
#include "detlab/bool_matrix.hpp"
#include "detlab/weighted_automaton.hpp"

namespace detlab {

/// Elements of a finitely generated matrix monoid in breadth-first discovery
/// order. elements[0] is the identity. Each other element records the element
/// it was reached from and the generator applied, so word(i) is the
/// shortest, then lexicographically least, generator word whose product is
/// elements[i].
template <class Element>
struct BasicMonoidClosure {
  std::vector<Element> elements;
  std::vector<std::size_t> parent;
  std::vector<LabelId> last_generator;
  bool complete = true;

  std::size_t size() const { return elements.size(); }

  Word word(std::size_t i) const {
    Word w;
    for (; i != 0; i = parent[i]) w.push_back(last_generator[i]);
    std::reverse(w.begin(), w.end());
    return w;
  }
};

using MonoidClosure = BasicMonoidClosure<BoolMatrix>;

/// 2^min(n^2, 24) elements.
std::size_t default_monoid_fuel(std::size_t dim);

/// Closure of {I} under right multiplication by the generators. Stops with
/// complete=false once `fuel` elements exist and more would be needed.
MonoidClosure monoid_closure(std::size_t dim, const std::vector<BoolMatrix>& gens, std::size_t fuel);
/// Dimension taken from the generators; throws std::invalid_argument if
/// `gens` is empty or the dimensions differ.
MonoidClosure monoid_closure(const std::vector<BoolMatrix>& gens, std::size_t fuel);
/// Transition monoid of an epsilon-free automaton.
MonoidClosure monoid_closure(const Automaton& a, std::size_t fuel);

/// Product of the transition matrices along `word`; the identity for the
/// empty word.
BoolMatrix morphism(const Automaton& a, const Word& word);
BoolMatrix morphism(const Automaton& a, const std::vector<std::string>& symbols);

/// I^T * morphism(word) * F != 0.
bool accepts_via_monoid(const Automaton& a, const Word& word);
bool accepts_via_monoid(const Automaton& a, const std::vector<std::string>& symbols);

/// Dense square matrix over a semifield.
template <Semifield K>
class Matrix {
 public:
  using Weight = typename K::value_type;

  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), entries_(n * n, K::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, K::one());
    return m;
  }

  std::size_t dim() const { return n_; }
  Weight at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, Weight w) { entries_[i * n_ + j] = std::move(w); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix out(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const Weight& xik = x.entries_[i * x.n_ + k];
        if (K::is_zero(xik)) continue;
        for (std::size_t j = 0; j < x.n_; ++j) {
          const Weight& ykj = y.entries_[k * x.n_ + j];
          if (!K::is_zero(ykj)) {
            Cell& cell = out.entries_[i * x.n_ + j];
            cell = K::plus(cell, K::times(xik, ykj));
          }
        }
      }
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.n_ == y.n_ && std::equal(x.entries_.begin(), x.entries_.end(), y.entries_.begin(),
                                      [](const Weight& a, const Weight& b) { return K::equal(a, b); });
  }

  /// Canonical order over the row-major entry sequence.
  struct Less {
    bool operator()(const Matrix& x, const Matrix& y) const {
      if (x.n_ != y.n_) return x.n_ < y.n_;
      return std::lexicographical_compare(x.entries_.begin(), x.entries_.end(), y.entries_.begin(), y.entries_.end(),
                                          [](const Weight& a, const Weight& b) { return K::less(a, b); });
    }
  };

 private:
  // Bytes instead of std::vector<bool> so cells are addressable.
  using Cell = std::conditional_t<std::is_same_v<Weight, bool>, unsigned char, Weight>;
  std::size_t n_ = 0;
  std::vector<Cell> entries_;
};

template <Semifield K>
std::vector<Matrix<K>> weighted_transition_matrices(const WeightedAutomaton<K>& w) {
  if (w.has_epsilon()) throw std::invalid_argument("weighted_transition_matrices: automaton has epsilon transitions");
  std::vector<Matrix<K>> mats(w.sigma(), Matrix<K>(w.num_states()));
  for (const auto& t : w.transitions()) mats[t.label].set(t.src, t.dst, t.weight);
  return mats;
}

template <Semifield K>
using WeightedMonoidClosure = BasicMonoidClosure<Matrix<K>>;

/// Closure of {I} under right multiplication by weighted generators with exact
/// element comparison. complete=false means the fuel ran out, which for an
/// infinite monoid is the only possible outcome.
template <Semifield K>
WeightedMonoidClosure<K> weighted_monoid_closure(std::size_t dim, const std::vector<Matrix<K>>& gens,
                                                 std::size_t fuel) {
  for (const auto& g : gens)
    if (g.dim() != dim) throw std::invalid_argument("weighted_monoid_closure: generator dimension mismatch");
  WeightedMonoidClosure<K> out;
  std::map<Matrix<K>, std::size_t, typename Matrix<K>::Less> seen;
  out.elements.push_back(Matrix<K>::identity(dim));
  out.parent.push_back(0);
  out.last_generator.push_back(0);
  seen.emplace(out.elements.back(), 0);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Matrix<K> next = out.elements[head] * gens[g];
      if (seen.count(next)) continue;
      if (out.elements.size() >= fuel) {
        out.complete = false;
        return out;
      }
      seen.emplace(next, out.elements.size());
      out.elements.push_back(std::move(next));
      out.parent.push_back(head);
      out.last_generator.push_back(static_cast<LabelId>(g));
    }
  }
  return out;
}

template <Semifield K>
WeightedMonoidClosure<K> weighted_monoid_closure(const WeightedAutomaton<K>& w, std::size_t fuel) {
  return weighted_monoid_closure<K>(w.num_states(), weighted_transition_matrices(w), fuel);
}

}  // namespace detlab
