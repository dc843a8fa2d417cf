#pragma once

// Gaussian elimination over an exact field.

#include <vector>

#include "pcx/exactfield.hpp"

namespace pcx {

using Row = std::vector<FieldValue>;
using Matrix = std::vector<Row>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const FieldValue inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const FieldValue f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m, std::size_t ncols) { return row_reduce(m, ncols).size(); }

/// Basis of { v : m v = 0 }, one vector per free column.
inline std::vector<Row> kernel_basis(Matrix m, std::size_t ncols, Field f) {
  const auto pivots = row_reduce(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Row> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Row v(ncols, FieldValue::zero(f));
    v[free] = FieldValue::one(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline FieldValue determinant(Matrix m, Field f) {
  const std::size_t n = m.size();
  FieldValue det = FieldValue::one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return FieldValue::zero(f);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const FieldValue inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const FieldValue factor = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  return det;
}

}  // namespace pcx
