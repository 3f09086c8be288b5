#ifndef SKEWLIN_MODULE_HPP
#define SKEWLIN_MODULE_HPP

#include <optional>
#include <string>
#include <vector>

#include "skewlin/algebra.hpp"
#include "skewlin/linalg.hpp"
#include "skewlin/matrix.hpp"

namespace skewlin {

/// A module presented by generator matrices.  V = F^n; s_gens generate the
/// acting ring, the optional blocks carry a claimed commutant T, a group G,
/// and a commutative ring R for the corollary pipelines.
struct ModuleInstance {
  FieldPtr field;
  std::size_t n = 0;
  std::vector<Matrix> s_gens;
  std::vector<Matrix> t_gens;
  std::vector<Matrix> g_gens;
  std::vector<Matrix> r_gens;
  std::string name;

  /// shapes, g_gens invertible, r_gens pairwise commuting
  void validate() const;
};

/// Smallest gens-invariant subspace containing the seeds; fixed point in
/// at most n closure rounds.  Empty seeds give the zero subspace.
Subspace spin(const FieldPtr& field, std::size_t n,
              const std::vector<Matrix>& gens, const std::vector<Vec>& seeds);

enum class IrredStrategy { Auto, Exhaustive, MeatAxe };

struct IrreducibilityReport {
  bool irreducible = false;
  /// "exhaustive" | "meataxe" | "division_shortcut"
  std::string strategy;
  /// proper nonzero invariant subspace, verified, when reducible
  std::optional<Subspace> witness;
};

/// Exhaustive mode spins from every nonzero vector up to scalar (used when
/// |F|^n <= 2^16).  MeatAxe mode works over any field: random algebra
/// elements, kernels of irreducible factors of their minimal polynomials,
/// and the transposed spin on the dual for the irreducible verdict.
/// Auto prefers exhaustive, then a certified-division-closure shortcut,
/// then MeatAxe.  Throws InconclusiveError when the budget runs out.
IrreducibilityReport irreducible_test(const FieldPtr& field, std::size_t n,
                                      const std::vector<Matrix>& gens,
                                      IrredStrategy strategy = IrredStrategy::Auto,
                                      std::uint64_t seed = kDefaultSeed,
                                      int budget = 200,
                                      bool allow_division_shortcut = true);

/// { r in algebra : r W = 0 } as a subspace of the algebra's coordinate
/// space; a two-sided ideal when the algebra is commutative.
Subspace annihilator(const AlgebraBasis& algebra, const Subspace& w);

/// A nonzero gens-invariant subspace with no proper nonzero gens-invariant
/// subspace.  Deterministic over finite fields: canonical-order seed vectors,
/// descending by restriction.  Throws InconclusiveError over infinite fields
/// when MeatAxe finds no handle.
Subspace minimal_submodule(const FieldPtr& field, std::size_t n,
                           const std::vector<Matrix>& gens,
                           std::uint64_t seed = kDefaultSeed, int budget = 200);

/// Generators restricted to an invariant subspace, in the coordinates of its
/// RREF basis.  Throws ValidationError if the subspace is not invariant.
std::vector<Matrix> restrict_gens(const std::vector<Matrix>& gens,
                                  const Subspace& w);

}  // namespace skewlin

#endif
