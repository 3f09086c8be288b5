#ifndef SKEWLIN_ALGEBRA_HPP
#define SKEWLIN_ALGEBRA_HPP

#include <optional>
#include <vector>

#include "skewlin/linalg.hpp"
#include "skewlin/matrix.hpp"

namespace skewlin {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed01;

/// Matrix algebra given by a linear basis, canonicalised so that equal spans
/// hold identical basis lists (RREF of the row-major vectorisations).
/// Construction verifies linear independence, closure under products, and —
/// when a unit is claimed — that it acts as a two-sided identity on the span.
class AlgebraBasis {
 public:
  static AlgebraBasis make(FieldPtr field, std::size_t n,
                           const std::vector<Matrix>& spanning,
                           bool expect_unit_identity = false);

  const FieldPtr& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  bool unital() const { return unit_coords_.has_value(); }
  const Vec& unit_coords() const { return *unit_coords_; }
  Matrix unit_matrix() const;

  Matrix element(const Vec& coords) const;
  std::optional<Vec> coordinates(const Matrix& m) const;
  bool contains(const Matrix& m) const;
  bool span_equal(const AlgebraBasis& other) const;
  bool commutative() const;

  /// c[i][j] = coordinates of B_i * B_j in the basis (each of length dim).
  std::vector<std::vector<Vec>> structure_constants() const;

  /// Left/right multiplication by the element with these coordinates, as a
  /// dim x dim matrix on the coordinate space.
  Matrix left_mult(const Vec& coords) const;
  Matrix right_mult(const Vec& coords) const;
  /// Left multiplications by the basis elements: the regular module.
  std::vector<Matrix> regular_gens() const;

  /// Finite only: number of elements |F|^dim.
  std::optional<std::uint64_t> element_count() const;
  /// Canonical span enumeration (digit order = basis order, little-endian).
  Matrix element_by_index(std::uint64_t index) const;

 private:
  FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<Matrix> basis_;
  std::optional<Vec> unit_coords_;
};

/// Basis of { X : X A = A X for all A in gens }, canonical; always unital
/// (the identity commutes with everything), dimension >= 1.
AlgebraBasis centralizer_basis(const FieldPtr& field, std::size_t n,
                               const std::vector<Matrix>& gens);

/// Smallest product-closed linear span containing gens (and the identity
/// when adjoin_identity is set); fixed point of span-and-multiply.
AlgebraBasis algebra_closure(const FieldPtr& field, std::size_t n,
                             const std::vector<Matrix>& gens,
                             bool adjoin_identity);

struct DivisionReport {
  bool division = false;
  /// method that settled it: "regular_module" | "finite_domain" |
  /// "quaternion_definite" | "commutative_minpoly" | "dimension_one"
  std::string method;
  /// zero-divisor pair (x, y), both nonzero with x*y = 0, when not division
  std::optional<std::pair<Matrix, Matrix>> witness;
};

/// Division-ring test through irreducibility of the left regular module
/// (a unital algebra is a division ring iff it has no proper nonzero left
/// ideal), with exact certification fallbacks over the rationals.
/// Throws InconclusiveError when nothing settles the question.
DivisionReport is_division_ring(const AlgebraBasis& a,
                                std::uint64_t seed = kDefaultSeed,
                                int budget = 200);

struct DoubleCentralizerReport {
  AlgebraBasis t_basis;        // C(<S>)
  AlgebraBasis s_cc_basis;     // C(T)
  AlgebraBasis closure_basis;  // <S> with identity
  bool biequal = false;        // C(T) == <S> as spans
};

DoubleCentralizerReport double_centralizer_check(const FieldPtr& field,
                                                 std::size_t n,
                                                 const std::vector<Matrix>& s_gens);

}  // namespace skewlin

#endif
