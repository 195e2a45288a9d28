#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "detlab/bitset.hpp"

namespace detlab {

/// Square matrix over the Boolean semifield, stored row-major as packed bits.
/// Entry (i, j) set means a transition from state i to state j.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n);

  static BoolMatrix identity(std::size_t n);
  static BoolMatrix ones(std::size_t n);
  /// Rows given as strings of '0'/'1', e.g. {"01", "10"}.
  static BoolMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t dim() const { return n_; }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true);

  BitSet row(std::size_t i) const;
  BitSet column(std::size_t j) const;
  std::size_t nonzeros() const;
  bool is_zero() const;
  bool is_all_ones() const;
  bool diagonal_all_ones() const;

  BoolMatrix transpose() const;
  /// Matrix with columns reordered: result(i, j) = (*this)(i, perm[j]).
  BoolMatrix permute_columns(const std::vector<std::size_t>& perm) const;

  /// Row vector times matrix: the set of j with v_i = 1 and M(i, j) = 1 for some i.
  BitSet left_multiply(const BitSet& v) const;

  std::vector<std::string> to_rows() const;
  std::string to_string() const;  // rows joined by '/'

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
  friend auto operator<=>(const BoolMatrix&, const BoolMatrix&) = default;

  std::size_t hash() const;

 private:
  friend BoolMatrix bool_matmul(const BoolMatrix& x, const BoolMatrix& y);

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// (xy)_ij = OR_k (x_ik AND y_kj). Throws std::invalid_argument on dimension mismatch.
BoolMatrix bool_matmul(const BoolMatrix& x, const BoolMatrix& y);

struct BoolMatrixHash {
  std::size_t operator()(const BoolMatrix& m) const { return m.hash(); }
};

}  // namespace detlab
