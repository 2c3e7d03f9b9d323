#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cyops/rational.hpp"

namespace cyops {

using RationalVector = std::vector<Rational>;

/// Row-echelon accumulator over Q. Rows can be streamed in; the structure
/// keeps a reduced basis of their span, which is enough to answer rank and
/// kernel questions without storing redundant rows.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t cols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ncols_; }

  /// Reduces `row` against the basis; returns true if it enlarged the span.
  bool insert(RationalVector row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t pc = pivots_[r];
      if (row[pc] == 0) continue;
      Rational f = row[pc];
      const RationalVector& base = rows_[r];
      for (std::size_t c = pc; c < ncols_; ++c)
        if (base[c] != 0) row[c] -= f * base[c];
    }
    std::size_t pc = 0;
    while (pc < ncols_ && row[pc] == 0) ++pc;
    if (pc == ncols_) return false;
    Rational inv = 1 / row[pc];
    for (std::size_t c = pc; c < ncols_; ++c) row[c] *= inv;
    // keep the basis fully reduced so that kernel extraction is direct
    for (auto& other : rows_) {
      if (other[pc] == 0) continue;
      Rational f = other[pc];
      for (std::size_t c = pc; c < ncols_; ++c)
        if (row[c] != 0) other[c] -= f * row[c];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pc) ++pos;
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), pc);
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(row));
    return true;
  }

  /// Basis of the null space {x : row . x = 0 for all inserted rows}.
  std::vector<RationalVector> kernel() const {
    std::vector<bool> is_pivot(ncols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < ncols_; ++free) {
      if (is_pivot[free]) continue;
      RationalVector v(ncols_);
      v[free] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t ncols_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank_of(const std::vector<RationalVector>& rows, std::size_t ncols) {
  RowEchelon e(ncols);
  for (const auto& r : rows) {
    e.insert(r);
    if (e.full()) break;
  }
  return e.rank();
}

inline std::vector<RationalVector> kernel_of(const std::vector<RationalVector>& rows, std::size_t ncols) {
  RowEchelon e(ncols);
  for (const auto& r : rows) {
    e.insert(r);
    if (e.full()) break;
  }
  return e.kernel();
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

/// Square matrix determinant by elimination.
inline Rational determinant(std::vector<RationalVector> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace cyops
