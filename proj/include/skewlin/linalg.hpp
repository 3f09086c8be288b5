#ifndef SKEWLIN_LINALG_HPP
#define SKEWLIN_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "skewlin/matrix.hpp"

namespace skewlin {

/// Incremental reduced-row-echelon span of row vectors.  Rows are kept fully
/// reduced with pivot 1 and strictly increasing pivot columns, so two equal
/// spans always hold identical row lists.  Deterministic pivoting: the first
/// nonzero entry of the reduced row.
class RrefSpan {
 public:
  RrefSpan(FieldPtr field, std::size_t width);

  /// Reduces v against the span; inserts the residual if nonzero.
  /// Returns true when the span grew.
  bool insert(Vec v);

  /// v reduced modulo the span.
  Vec residual(Vec v) const;
  bool contains(const Vec& v) const;

  /// Coordinates of v with respect to the stored RREF rows
  /// (nullopt when v is outside the span).
  std::optional<Vec> coordinates(const Vec& v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const FieldPtr& field() const { return field_; }

 private:
  FieldPtr field_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult reduced_row_echelon(const Matrix& m);

/// Linear subspace of F^ambient held as RREF row basis (canonical).
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero_space(FieldPtr field, std::size_t ambient);
  static Subspace full_space(FieldPtr field, std::size_t ambient);
  static Subspace from_vectors(FieldPtr field, std::size_t ambient,
                               const std::vector<Vec>& vectors);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

  /// dim(sum) + dim(intersection) = dim U + dim W.
  /// Throws ValidationError("AmbientMismatch") on different ambients.
  static std::pair<Subspace, Subspace> sum_intersect(const Subspace& u,
                                                     const Subspace& w);
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// { v : b . v = 0 for every basis row b } — the annihilator under the
  /// standard pairing; used to pull dual submodules back to V.
  Subspace perp() const;

  /// Image under a matrix acting on column vectors.
  Subspace image_under(const Matrix& m) const;

  /// Canonical enumeration of span elements: index digits little-endian in
  /// basis order, so index 1 is the first basis vector.  Finite fields only.
  Vec element_by_index(std::uint64_t index) const;
  std::uint64_t enumeration_size() const;  // |F|^dim, finite fields

 private:
  FieldPtr field_;
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

struct RankKernelImage {
  std::size_t rank = 0;
  Subspace kernel;  // of the column action x -> Mx
  Subspace image;   // column space
};

RankKernelImage rank_kernel_image(const Matrix& m);
std::size_t rank_of(const Matrix& m);

/// First solution of A x = b in pivot order, free variables zero;
/// nullopt when inconsistent.  Throws ValidationError on a shape mismatch.
std::optional<Vec> solve_linear(const Matrix& a, const Vec& b);

/// Inverse of a square matrix, nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Canonical vector enumeration of F^len: coordinate 0 is the least
/// significant digit, so index 1 = e_1.  Finite fields only.
Vec vector_by_index(const FieldPtr& field, std::size_t len, std::uint64_t index);

/// True when the first nonzero coordinate equals 1; spinning only these
/// loses nothing since spin(c v) = spin(v).
bool is_monic_vector(const FieldPtr& field, const Vec& v);

}  // namespace skewlin

#endif
