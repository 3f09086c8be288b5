#include "skewlin/linalg.hpp"

#include <algorithm>

#include "skewlin/errors.hpp"

namespace skewlin {

RrefSpan::RrefSpan(FieldPtr field, std::size_t width)
    : field_(std::move(field)), width_(width) {}

Vec RrefSpan::residual(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];  // copy: the loop below writes this slot
    if (field_->is_zero(c)) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < width_; ++j)
      v[j] = field_->sub(v[j], field_->mul(c, r[j]));
  }
  return v;
}

bool RrefSpan::contains(const Vec& v) const {
  return vec_is_zero(field_, residual(v));
}

std::optional<Vec> RrefSpan::coordinates(const Vec& v) const {
  Vec coords(rows_.size(), field_->zero());
  Vec w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = w[pivots_[i]];
    if (field_->is_zero(c)) continue;
    coords[i] = c;
    const Vec& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < width_; ++j)
      w[j] = field_->sub(w[j], field_->mul(c, r[j]));
  }
  if (!vec_is_zero(field_, w)) return std::nullopt;
  return coords;
}

bool RrefSpan::insert(Vec v) {
  v = residual(std::move(v));
  std::size_t piv = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (!field_->is_zero(v[j])) {
      piv = j;
      break;
    }
  if (piv == width_) return false;
  // normalise pivot to 1
  Scalar inv = field_->inv(v[piv]);
  for (std::size_t j = piv; j < width_; ++j) v[j] = field_->mul(inv, v[j]);
  // clear this column in the existing rows to stay fully reduced
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = rows_[i][piv];
    if (field_->is_zero(c)) continue;
    for (std::size_t j = piv; j < width_; ++j)
      rows_[i][j] = field_->sub(rows_[i][j], field_->mul(c, v[j]));
  }
  // insert keeping pivots strictly increasing
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, piv);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

RrefResult reduced_row_echelon(const Matrix& m) {
  RrefSpan span(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) span.insert(m.row(r));
  RrefResult out{Matrix(m.field(), span.dim(), m.cols()), span.pivots(), span.dim()};
  for (std::size_t i = 0; i < span.dim(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.rref.at(i, j) = span.rows()[i][j];
  return out;
}

std::size_t rank_of(const Matrix& m) {
  RrefSpan span(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) span.insert(m.row(r));
  return span.dim();
}

RankKernelImage rank_kernel_image(const Matrix& m) {
  const FieldPtr& f = m.field();
  RrefResult red = reduced_row_echelon(m);

  // kernel from the free columns of the RREF
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vec> kernel_vecs;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(m.cols(), f->zero());
    v[free_col] = f->one();
    for (std::size_t i = 0; i < red.rank; ++i)
      v[red.pivots[i]] = f->neg(red.rref.at(i, free_col));
    kernel_vecs.push_back(std::move(v));
  }

  // image = row space of the transpose
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));

  RankKernelImage out;
  out.rank = red.rank;
  out.kernel = Subspace::from_vectors(f, m.cols(), kernel_vecs);
  out.image = Subspace::from_vectors(f, m.rows(), cols);
  return out;
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw ValidationError("ShapeMismatch in solve_linear");
  const FieldPtr& f = a.field();
  // eliminate on [A | b]
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult red = reduced_row_echelon(aug);
  Vec x(a.cols(), f->zero());
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;  // row (0 ... 0 | 1)
    x[red.pivots[i]] = red.rref.at(i, a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw ValidationError("ShapeMismatch: inverse of non-square matrix");
  const FieldPtr& f = m.field();
  std::size_t n = m.rows();
  Matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f->one();
  }
  RrefResult red = reduced_row_echelon(aug);
  if (red.rank < n || red.pivots[n - 1] >= n) return std::nullopt;
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red.rref.at(i, n + j);
  return inv;
}

Subspace Subspace::zero_space(FieldPtr field, std::size_t ambient) {
  Subspace s;
  s.field_ = std::move(field);
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full_space(FieldPtr field, std::size_t ambient) {
  Subspace s;
  s.field_ = field;
  s.ambient_ = ambient;
  for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(vec_unit(field, ambient, i));
  return s;
}

Subspace Subspace::from_vectors(FieldPtr field, std::size_t ambient,
                                const std::vector<Vec>& vectors) {
  RrefSpan span(field, ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw ValidationError("AmbientMismatch in subspace basis");
    span.insert(v);
  }
  Subspace s;
  s.field_ = std::move(field);
  s.ambient_ = ambient;
  s.basis_ = span.rows();
  return s;
}

bool Subspace::contains(const Vec& v) const {
  RrefSpan span(field_, ambient_);
  for (const auto& b : basis_) span.insert(b);
  return span.contains(v);
}

bool Subspace::contains(const Subspace& other) const {
  RrefSpan span(field_, ambient_);
  for (const auto& b : basis_) span.insert(b);
  for (const auto& v : other.basis_)
    if (!span.contains(v)) return false;
  return true;
}

bool Subspace::operator==(const Subspace& other) const {
  return ambient_ == other.ambient_ && basis_ == other.basis_;
}

std::pair<Subspace, Subspace> Subspace::sum_intersect(const Subspace& u,
                                                      const Subspace& w) {
  if (u.ambient_ != w.ambient_) throw ValidationError("AmbientMismatch");
  const FieldPtr& f = u.field_;

  std::vector<Vec> all = u.basis_;
  all.insert(all.end(), w.basis_.begin(), w.basis_.end());
  Subspace sum = Subspace::from_vectors(f, u.ambient_, all);

  // intersection: kernel of [U^T | -W^T] gives coefficient pairs (a, b)
  // with a^T U = b^T W
  std::size_t k = u.dim(), m = w.dim();
  Subspace inter;
  if (k == 0 || m == 0) {
    inter = Subspace::zero_space(f, u.ambient_);
  } else {
    Matrix sys(f, u.ambient_, k + m);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < u.ambient_; ++i) sys.at(i, j) = u.basis_[j][i];
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < u.ambient_; ++i)
        sys.at(i, k + j) = f->neg(w.basis_[j][i]);
    RankKernelImage rki = rank_kernel_image(sys);
    std::vector<Vec> inter_vecs;
    for (const auto& coef : rki.kernel.basis()) {
      Vec v(u.ambient_, f->zero());
      for (std::size_t j = 0; j < k; ++j)
        v = vec_add(f, v, vec_scale(f, coef[j], u.basis_[j]));
      inter_vecs.push_back(std::move(v));
    }
    inter = Subspace::from_vectors(f, u.ambient_, inter_vecs);
  }
  return {std::move(sum), std::move(inter)};
}

Subspace Subspace::sum(const Subspace& other) const {
  return sum_intersect(*this, other).first;
}

Subspace Subspace::intersect(const Subspace& other) const {
  return sum_intersect(*this, other).second;
}

Subspace Subspace::perp() const {
  if (basis_.empty()) return full_space(field_, ambient_);
  Matrix m(field_, basis_.size(), ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m.at(i, j) = basis_[i][j];
  return rank_kernel_image(m).kernel;
}

Subspace Subspace::image_under(const Matrix& m) const {
  std::vector<Vec> images;
  for (const auto& b : basis_) images.push_back(m.apply(b));
  return from_vectors(field_, m.rows(), images);
}

Vec Subspace::element_by_index(std::uint64_t index) const {
  std::uint64_t q = *field_->order();
  Vec v(ambient_, field_->zero());
  for (const auto& b : basis_) {
    Scalar c = field_->element(index % q);
    index /= q;
    if (!field_->is_zero(c)) v = vec_add(field_, v, vec_scale(field_, c, b));
  }
  return v;
}

std::uint64_t Subspace::enumeration_size() const {
  std::uint64_t q = *field_->order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim(); ++i) total *= q;
  return total;
}

Vec vector_by_index(const FieldPtr& field, std::size_t len, std::uint64_t index) {
  std::uint64_t q = *field->order();
  Vec v(len, field->zero());
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = field->element(index % q);
    index /= q;
  }
  return v;
}

bool is_monic_vector(const FieldPtr& field, const Vec& v) {
  for (const auto& c : v) {
    if (field->is_zero(c)) continue;
    return field->is_one(c);
  }
  return false;
}

}  // namespace skewlin
