#include "skewlin/module.hpp"

#include <deque>

#include "skewlin/errors.hpp"
#include "skewlin/poly.hpp"

namespace skewlin {

namespace {

constexpr std::uint64_t kExhaustiveVectorBound = 1u << 16;

bool exhaustive_feasible(const FieldPtr& field, std::size_t n) {
  if (!field->finite()) return false;
  std::uint64_t q = *field->order(), total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > kExhaustiveVectorBound) return false;
  }
  return true;
}

bool is_invariant(const std::vector<Matrix>& gens, const Subspace& w) {
  for (const auto& g : gens)
    for (const auto& b : w.basis())
      if (!w.contains(g.apply(b))) return false;
  return true;
}

}  // namespace

void ModuleInstance::validate() const {
  if (!field) throw ValidationError("instance has no field");
  if (n == 0) throw ValidationError("carrier dimension must be positive");
  auto check_block = [&](const std::vector<Matrix>& block, const char* name) {
    for (const auto& m : block) {
      if (m.rows() != n || m.cols() != n)
        throw ValidationError(std::string(name) + " matrices must be n x n");
      if (!(m.field()->spec() == field->spec()))
        throw ValidationError(std::string(name) + " matrices use a different field");
    }
  };
  check_block(s_gens, "s_gens");
  check_block(t_gens, "t_gens");
  check_block(g_gens, "g_gens");
  check_block(r_gens, "r_gens");
  for (const auto& g : g_gens)
    if (rank_of(g) != n) throw ValidationError("g_gens must be invertible");
  for (std::size_t i = 0; i < r_gens.size(); ++i)
    for (std::size_t j = i + 1; j < r_gens.size(); ++j)
      if (!(r_gens[i].mul(r_gens[j]) == r_gens[j].mul(r_gens[i])))
        throw ValidationError("r_gens must commute pairwise");
}

Subspace spin(const FieldPtr& field, std::size_t n,
              const std::vector<Matrix>& gens, const std::vector<Vec>& seeds) {
  RrefSpan span(field, n);
  std::deque<Vec> work;
  for (const auto& s : seeds)
    if (span.insert(s)) work.push_back(s);
  while (!work.empty() && span.dim() < n) {
    Vec v = std::move(work.front());
    work.pop_front();
    for (const auto& g : gens) {
      Vec w = g.apply(v);
      if (span.insert(w)) work.push_back(std::move(w));
    }
  }
  return Subspace::from_vectors(field, n, span.rows());
}

namespace {

IrreducibilityReport exhaustive_irreducible(const FieldPtr& field, std::size_t n,
                                            const std::vector<Matrix>& gens) {
  std::uint64_t q = *field->order(), total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v = vector_by_index(field, n, idx);
    if (!is_monic_vector(field, v)) continue;  // spin(cv) = spin(v)
    Subspace u = spin(field, n, gens, {v});
    if (!u.is_full()) {
      if (!is_invariant(gens, u))
        throw std::logic_error("spin produced a non-invariant subspace");
      return {false, "exhaustive", std::move(u)};
    }
  }
  return {true, "exhaustive", std::nullopt};
}

IrreducibilityReport meataxe_irreducible(const FieldPtr& field, std::size_t n,
                                         const std::vector<Matrix>& gens,
                                         std::uint64_t seed, int budget) {
  if (n == 1) return {true, "meataxe", std::nullopt};

  // words of length <= 2 in the generators, plus the identity
  std::vector<Matrix> pool;
  pool.push_back(Matrix::identity(field, n));
  for (const auto& g : gens) pool.push_back(g);
  for (const auto& a : gens)
    for (const auto& b : gens) pool.push_back(a.mul(b));

  std::vector<Matrix> tgens;
  for (const auto& g : gens) tgens.push_back(g.transpose());

  Rng rng(seed);
  std::uniform_int_distribution<int> small(-3, 3);

  for (int attempt = 0; attempt < budget; ++attempt) {
    Matrix theta = Matrix::zero(field, n, n);
    for (const auto& w : pool) {
      Scalar c = field->finite() ? field->random_element(rng)
                                 : field->from_int(small(rng));
      if (!field->is_zero(c)) theta = theta.add(w.scale(c));
    }
    if (theta.is_zero()) continue;

    Poly m = minimal_polynomial(theta);
    std::vector<Poly> factors;
    if (field->finite()) {
      for (auto& [p, mult] : factor_poly_finite(field, m)) factors.push_back(p);
    } else if (field->is_zero(m[0])) {
      factors.push_back(poly_x(field));  // singular handle only over Q
    }

    for (const Poly& p : factors) {
      Matrix pt = poly_apply(p, theta);
      Subspace ker = rank_kernel_image(pt).kernel;
      for (const auto& v : ker.basis()) {
        Subspace u = spin(field, n, gens, {v});
        if (!u.is_full()) {
          if (!is_invariant(gens, u))
            throw std::logic_error("spin produced a non-invariant subspace");
          return {false, "meataxe", std::move(u)};
        }
      }
      // Irreducibility needs p of multiplicity one in the characteristic
      // polynomial: equivalently ker p(theta) has dimension deg p and the
      // kernel chain of p(theta) stabilises there.
      std::size_t degp = static_cast<std::size_t>(poly_deg(p));
      if (ker.dim() != degp) continue;
      if (rank_kernel_image(pt.mul(pt)).kernel.dim() != degp) continue;
      Subspace kert = rank_kernel_image(pt.transpose()).kernel;
      Subspace dual = spin(field, n, tgens, {kert.basis().front()});
      if (dual.is_full()) return {true, "meataxe", std::nullopt};
      Subspace witness = dual.perp();
      if (witness.is_zero() || witness.is_full() || !is_invariant(gens, witness))
        throw std::logic_error("dual witness construction failed");
      return {false, "meataxe", std::move(witness)};
    }
  }
  throw InconclusiveError("meataxe budget exhausted without a usable element");
}

}  // namespace

IrreducibilityReport irreducible_test(const FieldPtr& field, std::size_t n,
                                      const std::vector<Matrix>& gens,
                                      IrredStrategy strategy, std::uint64_t seed,
                                      int budget, bool allow_division_shortcut) {
  if (n == 0) throw ValidationError("irreducibility needs n >= 1");
  switch (strategy) {
    case IrredStrategy::Exhaustive:
      if (!exhaustive_feasible(field, n))
        throw ValidationError("exhaustive irreducibility needs |F|^n <= 2^16");
      return exhaustive_irreducible(field, n, gens);
    case IrredStrategy::MeatAxe:
      return meataxe_irreducible(field, n, gens, seed, budget);
    case IrredStrategy::Auto:
      break;
  }
  if (exhaustive_feasible(field, n)) return exhaustive_irreducible(field, n, gens);
  if (allow_division_shortcut) {
    AlgebraBasis closure = algebra_closure(field, n, gens, true);
    std::optional<DivisionReport> div;
    try {
      div = is_division_ring(closure, seed, budget);
    } catch (const InconclusiveError&) {
      div = std::nullopt;
    }
    if (div && div->division) {
      // every nonzero spin is a free rank-one module over the closure
      if (closure.dim() == n) return {true, "division_shortcut", std::nullopt};
      Subspace u = spin(field, n, gens, {vec_unit(field, n, 0)});
      if (u.dim() != closure.dim() || !is_invariant(gens, u))
        throw std::logic_error("division shortcut witness construction failed");
      return {false, "division_shortcut", std::move(u)};
    }
  }
  return meataxe_irreducible(field, n, gens, seed, budget);
}

Subspace annihilator(const AlgebraBasis& algebra, const Subspace& w) {
  const FieldPtr& f = algebra.field();
  std::size_t d = algebra.dim(), n = algebra.n();
  if (w.ambient() != n) throw ValidationError("AmbientMismatch in annihilator");
  if (w.is_zero()) return Subspace::full_space(f, d);
  Matrix sys(f, w.dim() * n, d);
  std::size_t row = 0;
  for (const auto& wb : w.basis()) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec img = algebra.basis()[i].apply(wb);
      for (std::size_t r = 0; r < n; ++r) sys.at(row + r, i) = img[r];
    }
    row += n;
  }
  return rank_kernel_image(sys).kernel;
}

std::vector<Matrix> restrict_gens(const std::vector<Matrix>& gens,
                                  const Subspace& w) {
  const FieldPtr& f = w.field();
  RrefSpan span(f, w.ambient());
  for (const auto& b : w.basis()) span.insert(b);
  std::vector<Matrix> out;
  for (const auto& g : gens) {
    Matrix r(f, w.dim(), w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) {
      auto coords = span.coordinates(g.apply(w.basis()[j]));
      if (!coords) throw ValidationError("subspace is not invariant under the generators");
      for (std::size_t i = 0; i < w.dim(); ++i) r.at(i, j) = (*coords)[i];
    }
    out.push_back(std::move(r));
  }
  return out;
}

Subspace minimal_submodule(const FieldPtr& field, std::size_t n,
                           const std::vector<Matrix>& gens, std::uint64_t seed,
                           int budget) {
  if (n == 0) throw ValidationError("minimal submodule needs n >= 1");
  if (exhaustive_feasible(field, n)) {
    Subspace current = Subspace::full_space(field, n);
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      std::uint64_t total = current.enumeration_size();
      for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec v = current.element_by_index(idx);
        Subspace u = spin(field, n, gens, {v});
        if (u.dim() < current.dim()) {
          current = std::move(u);
          shrunk = true;
          break;  // restart the scan inside the smaller module
        }
      }
    }
    return current;
  }

  // infinite field (or oversized): descend along MeatAxe witnesses
  IrreducibilityReport rep =
      irreducible_test(field, n, gens, IrredStrategy::Auto, seed, budget);
  if (rep.irreducible) return Subspace::full_space(field, n);
  const Subspace& w = *rep.witness;
  std::vector<Matrix> rgens = restrict_gens(gens, w);
  Subspace inner = minimal_submodule(field, w.dim(), rgens, seed + 1, budget);
  std::vector<Vec> lifted;
  for (const auto& c : inner.basis()) {
    Vec v = vec_zero(field, n);
    for (std::size_t i = 0; i < w.dim(); ++i)
      v = vec_add(field, v, vec_scale(field, c[i], w.basis()[i]));
    lifted.push_back(std::move(v));
  }
  return Subspace::from_vectors(field, n, lifted);
}

}  // namespace skewlin
