#include "skewlin/matrix.hpp"

#include <stdexcept>

#include "skewlin/errors.hpp"

namespace skewlin {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      a_(rows * cols, field_->zero()) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

Matrix Matrix::zero(const FieldPtr& field, std::size_t rows, std::size_t cols) {
  return Matrix(field, rows, cols);
}

Matrix Matrix::from_entries(const FieldPtr& field, std::size_t rows,
                            std::size_t cols, std::vector<Scalar> entries) {
  if (entries.size() != rows * cols)
    throw ValidationError("entry count does not match matrix shape");
  Matrix m(field, rows, cols);
  m.a_ = std::move(entries);
  return m;
}

Matrix Matrix::from_ints(const FieldPtr& field,
                         const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ValidationError("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = field->from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::add(const Matrix& o) const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = field_->add(a_[i], o.a_[i]);
  return m;
}

Matrix Matrix::sub(const Matrix& o) const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = field_->sub(a_[i], o.a_[i]);
  return m;
}

Matrix Matrix::neg() const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = field_->neg(a_[i]);
  return m;
}

Matrix Matrix::mul(const Matrix& o) const {
  if (cols_ != o.rows_) throw ValidationError("ShapeMismatch in matrix product");
  Matrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (field_->is_zero(aik)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        m.at(i, j) = field_->add(m.at(i, j), field_->mul(aik, o.at(k, j)));
    }
  return m;
}

Matrix Matrix::scale(const Scalar& c) const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = field_->mul(c, a_[i]);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::pow(std::uint64_t e) const {
  Matrix acc = identity(field_, rows_);
  Matrix base = *this;
  while (e) {
    if (e & 1) acc = acc.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return acc;
}

Vec Matrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw ValidationError("ShapeMismatch in matrix-vector product");
  Vec y(rows_, field_->zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_->is_zero(at(i, j))) continue;
      y[i] = field_->add(y[i], field_->mul(at(i, j), x[j]));
    }
  return y;
}

Vec Matrix::apply_row(const Vec& x) const {
  if (x.size() != rows_) throw ValidationError("ShapeMismatch in row-vector product");
  Vec y(cols_, field_->zero());
  for (std::size_t i = 0; i < rows_; ++i) {
    if (field_->is_zero(x[i])) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      y[j] = field_->add(y[j], field_->mul(x[i], at(i, j)));
  }
  return y;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

Vec Matrix::col(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, c));
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& s : a_)
    if (!field_->is_zero(s)) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(field_, rows_);
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Vec Matrix::vectorize() const { return a_; }

Matrix Matrix::from_vector(const FieldPtr& field, std::size_t rows,
                           std::size_t cols, const Vec& v) {
  return from_entries(field, rows, cols, v);
}

std::string to_text(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m.field()->to_string(m.at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

Vec vec_zero(const FieldPtr& f, std::size_t n) { return Vec(n, f->zero()); }

Vec vec_unit(const FieldPtr& f, std::size_t n, std::size_t i) {
  Vec v(n, f->zero());
  v[i] = f->one();
  return v;
}

Vec vec_add(const FieldPtr& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f->add(a[i], b[i]);
  return r;
}

Vec vec_sub(const FieldPtr& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f->sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const FieldPtr& f, const Scalar& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f->mul(c, a[i]);
  return r;
}

bool vec_is_zero(const FieldPtr& f, const Vec& a) {
  for (const auto& s : a)
    if (!f->is_zero(s)) return false;
  return true;
}

}  // namespace skewlin
