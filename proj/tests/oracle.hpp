// Test-side oracles, deliberately independent of the library's elimination
// path: plain forward Gaussian elimination (no normalisation, no
// back-substitution, bottom-row pivot selection) computing rank and
// consistency only.
#ifndef SKEWLIN_TESTS_ORACLE_HPP
#define SKEWLIN_TESTS_ORACLE_HPP

#include <vector>

#include "skewlin/matrix.hpp"

namespace skewlin::testing {

// Rank by forward elimination.  Picks the LAST row with a nonzero entry in
// the current column as pivot (the library picks first-insert order), and
// never normalises pivots.
inline std::size_t oracle_rank(const Matrix& m) {
  const FieldPtr& f = m.field();
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t r = rows.size(); r-- > rank;)
      if (!f->is_zero(rows[r][col])) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (f->is_zero(rows[r][col])) continue;
      // rows[r] := pivot_entry * rows[r] - entry * rows[rank], no division
      Scalar entry = rows[r][col];
      Scalar pe = rows[rank][col];
      for (std::size_t j = 0; j < m.cols(); ++j)
        rows[r][j] = f->sub(f->mul(pe, rows[r][j]), f->mul(entry, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

// Consistency of A x = b via the rank criterion rank(A) == rank(A|b),
// both ranks from the oracle above.
inline bool oracle_solvable(const Matrix& a, const Vec& b) {
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  return oracle_rank(a) == oracle_rank(aug);
}

inline Matrix random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols,
                            Rng& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f->random_element(rng);
  return m;
}

inline Vec random_vec(const FieldPtr& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& s : v) s = f->random_element(rng);
  return v;
}

}  // namespace skewlin::testing

#endif
