#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dopb/rational.hpp"

namespace dopb {

using Matrix = std::vector<std::vector<Rational>>;

struct EchelonForm {
  Matrix rref;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t columns = 0;
};

/// Gauss-Jordan elimination over Q.
inline EchelonForm reduced_row_echelon(Matrix m, std::size_t columns) {
  EchelonForm out;
  out.columns = columns;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < columns; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < columns; ++c)
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rref = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m, std::size_t columns) { return reduced_row_echelon(m, columns).pivots.size(); }

/// Kernel basis read off the RREF: one vector per free column, in increasing
/// column order, with a 1 in its free column.
inline std::vector<std::vector<Rational>> kernel_basis(const Matrix& m, std::size_t columns) {
  const EchelonForm ef = reduced_row_echelon(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(columns);
    v[free] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.rref[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace dopb
