#include "detlab/bool_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace detlab {

BoolMatrix::BoolMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoolMatrix BoolMatrix::ones(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j);
  return m;
}

BoolMatrix BoolMatrix::from_rows(const std::vector<std::string>& rows) {
  BoolMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("BoolMatrix::from_rows: matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] == '1')
        m.set(i, j);
      else if (rows[i][j] != '0')
        throw std::invalid_argument("BoolMatrix::from_rows: entries must be 0 or 1");
    }
  }
  return m;
}

void BoolMatrix::set(std::size_t i, std::size_t j, bool value) {
  auto& word = bits_[i * stride_ + (j >> 6)];
  const auto mask = std::uint64_t{1} << (j & 63);
  if (value)
    word |= mask;
  else
    word &= ~mask;
}

BitSet BoolMatrix::row(std::size_t i) const {
  BitSet r(n_);
  for (std::size_t j = 0; j < n_; ++j)
    if (get(i, j)) r.set(j);
  return r;
}

BitSet BoolMatrix::column(std::size_t j) const {
  BitSet c(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i, j)) c.set(i);
  return c;
}

std::size_t BoolMatrix::nonzeros() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BoolMatrix::is_zero() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

bool BoolMatrix::is_all_ones() const { return nonzeros() == n_ * n_; }

bool BoolMatrix::diagonal_all_ones() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (!get(i, i)) return false;
  return true;
}

BoolMatrix BoolMatrix::transpose() const {
  BoolMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

BoolMatrix BoolMatrix::permute_columns(const std::vector<std::size_t>& perm) const {
  BoolMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (get(i, perm[j])) m.set(i, j);
  return m;
}

BitSet BoolMatrix::left_multiply(const BitSet& v) const {
  if (v.size() != n_) throw std::invalid_argument("BoolMatrix::left_multiply: dimension mismatch");
  BitSet out(n_);
  std::vector<std::uint64_t> acc(stride_, 0);
  v.for_each([&](StateId k) {
    const std::uint64_t* src = &bits_[k * stride_];
    for (std::size_t w = 0; w < stride_; ++w) acc[w] |= src[w];
  });
  for (std::size_t j = 0; j < n_; ++j)
    if ((acc[j >> 6] >> (j & 63)) & 1u) out.set(j);
  return out;
}

std::vector<std::string> BoolMatrix::to_rows() const {
  std::vector<std::string> rows(n_, std::string(n_, '0'));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (get(i, j)) rows[i][j] = '1';
  return rows;
}

std::string BoolMatrix::to_string() const {
  std::string out;
  auto rows = to_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += '/';
    out += rows[i];
  }
  return out;
}

std::size_t BoolMatrix::hash() const {
  std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
  for (auto w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

BoolMatrix bool_matmul(const BoolMatrix& x, const BoolMatrix& y) {
  if (x.n_ != y.n_) throw std::invalid_argument("bool_matmul: dimension mismatch");
  BoolMatrix out(x.n_);
  const std::size_t stride = x.stride_;
  for (std::size_t i = 0; i < x.n_; ++i) {
    std::uint64_t* dst = &out.bits_[i * stride];
    for (std::size_t w = 0; w < stride; ++w) {
      std::uint64_t bits = x.bits_[i * stride + w];
      while (bits) {
        const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const std::uint64_t* src = &y.bits_[k * stride];
        for (std::size_t v = 0; v < stride; ++v) dst[v] |= src[v];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

}  // namespace detlab
