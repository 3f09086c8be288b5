#ifndef SKEWLIN_MATRIX_HPP
#define SKEWLIN_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "skewlin/field.hpp"

namespace skewlin {

using Vec = std::vector<Scalar>;

/// Dense exact matrix, row-major.  Matrices act on column vectors;
/// composition s after t is the product s * t.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldPtr& field, std::size_t n);
  static Matrix zero(const FieldPtr& field, std::size_t rows, std::size_t cols);
  /// rows*cols entries in row-major order
  static Matrix from_entries(const FieldPtr& field, std::size_t rows,
                             std::size_t cols, std::vector<Scalar> entries);
  /// convenience for tests: integer entries reduced into the field
  static Matrix from_ints(const FieldPtr& field,
                          const std::vector<std::vector<std::int64_t>>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  Matrix add(const Matrix& o) const;
  Matrix sub(const Matrix& o) const;
  Matrix neg() const;
  Matrix mul(const Matrix& o) const;
  Matrix scale(const Scalar& c) const;
  Matrix transpose() const;
  Matrix pow(std::uint64_t e) const;

  /// y = M x  (column-vector action)
  Vec apply(const Vec& x) const;
  /// y^T = x^T M, i.e. the action on row vectors
  Vec apply_row(const Vec& x) const;

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }
  bool operator==(const Matrix& o) const;

  /// row-major flattening, used as algebra coordinates
  Vec vectorize() const;
  static Matrix from_vector(const FieldPtr& field, std::size_t rows,
                            std::size_t cols, const Vec& v);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

/// "[[0,1],[0,0]]" rendering, used for witnesses in diagnostics
std::string to_text(const Matrix& m);

// small exact vector helpers over a shared field
Vec vec_zero(const FieldPtr& f, std::size_t n);
Vec vec_unit(const FieldPtr& f, std::size_t n, std::size_t i);
Vec vec_add(const FieldPtr& f, const Vec& a, const Vec& b);
Vec vec_sub(const FieldPtr& f, const Vec& a, const Vec& b);
Vec vec_scale(const FieldPtr& f, const Scalar& c, const Vec& a);
bool vec_is_zero(const FieldPtr& f, const Vec& a);

}  // namespace skewlin

#endif
