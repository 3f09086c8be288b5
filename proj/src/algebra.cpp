#include "skewlin/algebra.hpp"

#include <deque>

#include "skewlin/errors.hpp"
#include "skewlin/module.hpp"
#include "skewlin/poly.hpp"

namespace skewlin {

AlgebraBasis AlgebraBasis::make(FieldPtr field, std::size_t n,
                                const std::vector<Matrix>& spanning,
                                bool expect_unit_identity) {
  RrefSpan span(field, n * n);
  for (const auto& m : spanning) {
    if (m.rows() != n || m.cols() != n)
      throw ValidationError("algebra basis matrices must be n x n");
    if (!span.insert(m.vectorize()))
      throw ValidationError("algebra basis is linearly dependent");
  }
  AlgebraBasis a;
  a.field_ = std::move(field);
  a.n_ = n;
  for (const auto& row : span.rows())
    a.basis_.push_back(Matrix::from_vector(a.field_, n, n, row));

  // closure under products
  for (const auto& x : a.basis_)
    for (const auto& y : a.basis_)
      if (!span.contains(x.mul(y).vectorize()))
        throw ValidationError("algebra basis is not closed under products");

  Matrix id = Matrix::identity(a.field_, n);
  if (auto coords = span.coordinates(id.vectorize())) {
    a.unit_coords_ = *coords;
    // identity on V is automatically a two-sided identity on the span
  } else if (expect_unit_identity) {
    throw ValidationError("algebra span does not contain the identity");
  }
  return a;
}

Matrix AlgebraBasis::unit_matrix() const { return element(*unit_coords_); }

Matrix AlgebraBasis::element(const Vec& coords) const {
  Matrix m = Matrix::zero(field_, n_, n_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (field_->is_zero(coords[i])) continue;
    m = m.add(basis_[i].scale(coords[i]));
  }
  return m;
}

std::optional<Vec> AlgebraBasis::coordinates(const Matrix& m) const {
  RrefSpan span(field_, n_ * n_);
  for (const auto& b : basis_) span.insert(b.vectorize());
  return span.coordinates(m.vectorize());
}

bool AlgebraBasis::contains(const Matrix& m) const {
  return coordinates(m).has_value();
}

bool AlgebraBasis::span_equal(const AlgebraBasis& other) const {
  if (dim() != other.dim() || n_ != other.n_) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!(basis_[i] == other.basis_[i])) return false;
  return true;
}

bool AlgebraBasis::commutative() const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (!(basis_[i].mul(basis_[j]) == basis_[j].mul(basis_[i]))) return false;
  return true;
}

std::vector<std::vector<Vec>> AlgebraBasis::structure_constants() const {
  RrefSpan span(field_, n_ * n_);
  for (const auto& b : basis_) span.insert(b.vectorize());
  std::vector<std::vector<Vec>> c(dim(), std::vector<Vec>(dim()));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      auto coords = span.coordinates(basis_[i].mul(basis_[j]).vectorize());
      if (!coords) throw ValidationError("algebra not closed under products");
      c[i][j] = std::move(*coords);
    }
  return c;
}

Matrix AlgebraBasis::left_mult(const Vec& coords) const {
  Matrix x = element(coords);
  RrefSpan span(field_, n_ * n_);
  for (const auto& b : basis_) span.insert(b.vectorize());
  Matrix l(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = span.coordinates(x.mul(basis_[j]).vectorize());
    if (!col) throw ValidationError("left multiplication leaves the span");
    for (std::size_t i = 0; i < dim(); ++i) l.at(i, j) = (*col)[i];
  }
  return l;
}

Matrix AlgebraBasis::right_mult(const Vec& coords) const {
  Matrix x = element(coords);
  RrefSpan span(field_, n_ * n_);
  for (const auto& b : basis_) span.insert(b.vectorize());
  Matrix r(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = span.coordinates(basis_[j].mul(x).vectorize());
    if (!col) throw ValidationError("right multiplication leaves the span");
    for (std::size_t i = 0; i < dim(); ++i) r.at(i, j) = (*col)[i];
  }
  return r;
}

std::vector<Matrix> AlgebraBasis::regular_gens() const {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < dim(); ++i) {
    Vec e(dim(), field_->zero());
    e[i] = field_->one();
    gens.push_back(left_mult(e));
  }
  return gens;
}

std::optional<std::uint64_t> AlgebraBasis::element_count() const {
  if (!field_->finite()) return std::nullopt;
  std::uint64_t q = *field_->order(), total = 1;
  for (std::size_t i = 0; i < dim(); ++i) total *= q;
  return total;
}

Matrix AlgebraBasis::element_by_index(std::uint64_t index) const {
  std::uint64_t q = *field_->order();
  Vec coords(dim(), field_->zero());
  for (std::size_t i = 0; i < dim(); ++i) {
    coords[i] = field_->element(index % q);
    index /= q;
  }
  return element(coords);
}

AlgebraBasis centralizer_basis(const FieldPtr& field, std::size_t n,
                               const std::vector<Matrix>& gens) {
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n)
      throw ValidationError("centralizer generators must be n x n");
  // unknown X, equations X A - A X = 0 entrywise for each generator A
  std::size_t nn = n * n;
  Matrix sys(field, gens.size() * nn, nn);
  std::size_t row = 0;
  for (const auto& a : gens) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t s = 0; s < n; ++s) {
          // + X_{is} A_{sj}
          sys.at(row, i * n + s) = field->add(sys.at(row, i * n + s), a.at(s, j));
          // - A_{is} X_{sj}
          sys.at(row, s * n + j) = field->sub(sys.at(row, s * n + j), a.at(i, s));
        }
        ++row;
      }
  }
  std::vector<Matrix> basis;
  if (gens.empty()) {
    for (std::size_t i = 0; i < nn; ++i) {
      Vec v(nn, field->zero());
      v[i] = field->one();
      basis.push_back(Matrix::from_vector(field, n, n, v));
    }
  } else {
    RankKernelImage rki = rank_kernel_image(sys);
    for (const auto& v : rki.kernel.basis())
      basis.push_back(Matrix::from_vector(field, n, n, v));
  }
  return AlgebraBasis::make(field, n, basis, /*expect_unit_identity=*/true);
}

AlgebraBasis algebra_closure(const FieldPtr& field, std::size_t n,
                             const std::vector<Matrix>& gens,
                             bool adjoin_identity) {
  RrefSpan span(field, n * n);
  std::deque<Matrix> work;
  std::vector<Matrix> members;
  auto push = [&](const Matrix& m) {
    if (span.insert(m.vectorize())) {
      members.push_back(m);
      work.push_back(m);
    }
  };
  if (adjoin_identity) push(Matrix::identity(field, n));
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n)
      throw ValidationError("closure generators must be n x n");
    push(g);
  }
  while (!work.empty()) {
    Matrix m = work.front();
    work.pop_front();
    // products with every current member, both sides
    std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      push(m.mul(members[i]));
      push(members[i].mul(m));
    }
  }
  std::vector<Matrix> basis;
  for (const auto& row : span.rows())
    basis.push_back(Matrix::from_vector(field, n, n, row));
  return AlgebraBasis::make(field, n, basis, adjoin_identity);
}

namespace {

// trace of the left regular representation, linear in the coordinates
Vec regular_trace_functional(const AlgebraBasis& a) {
  Vec t(a.dim(), a.field()->zero());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec e(a.dim(), a.field()->zero());
    e[i] = a.field()->one();
    Matrix l = a.left_mult(e);
    Scalar tr = a.field()->zero();
    for (std::size_t k = 0; k < a.dim(); ++k) tr = a.field()->add(tr, l.at(k, k));
    t[i] = tr;
  }
  return t;
}

bool rational_negative(const Scalar& s) { return s.rational() < 0; }

// Definite quaternion certification over Q: find trace-zero u, v with
// u^2 = a < 0, v^2 = b < 0, uv = -vu and {1, u, v, uv} spanning.  Then the
// norm form x^2 - a y^2 - b z^2 + a b w^2 is positive definite and
// q (conj q) = N(q) makes every nonzero element invertible.
std::optional<DivisionReport> certify_definite_quaternion(const AlgebraBasis& a) {
  const FieldPtr& f = a.field();
  if (a.dim() != 4 || a.commutative() || !a.unital()) return std::nullopt;
  Matrix unit = a.unit_matrix();

  Vec tau = regular_trace_functional(a);
  Matrix tau_row(f, 1, a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) tau_row.at(0, j) = tau[j];
  Subspace pure = rank_kernel_image(tau_row).kernel;  // trace-zero coords
  if (pure.dim() != 3) return std::nullopt;

  auto scalar_square = [&](const Matrix& u) -> std::optional<Scalar> {
    // u^2 = c * unit?
    Matrix sq = u.mul(u);
    for (std::size_t i = 0; i < a.n(); ++i)
      for (std::size_t j = 0; j < a.n(); ++j)
        if (!f->is_zero(unit.at(i, j))) {
          Scalar c = f->div(sq.at(i, j), unit.at(i, j));
          if (sq == unit.scale(c)) return c;
          return std::nullopt;
        }
    return std::nullopt;
  };

  // candidate pure elements: basis vectors, then pairwise sums
  std::vector<Vec> candidates(pure.basis());
  for (std::size_t i = 0; i < pure.basis().size(); ++i)
    for (std::size_t j = i + 1; j < pure.basis().size(); ++j)
      candidates.push_back(vec_add(f, pure.basis()[i], pure.basis()[j]));

  for (const auto& uc : candidates) {
    Matrix u = a.element(uc);
    auto asq = scalar_square(u);
    if (!asq || f->is_zero(*asq) || !rational_negative(*asq)) continue;
    // solve for v in the pure space with u v + v u = 0
    std::size_t pd = pure.dim();
    Matrix sys(f, a.n() * a.n(), pd);
    for (std::size_t j = 0; j < pd; ++j) {
      Matrix bj = a.element(pure.basis()[j]);
      Matrix s = u.mul(bj).add(bj.mul(u));
      Vec vs = s.vectorize();
      for (std::size_t i = 0; i < vs.size(); ++i) sys.at(i, j) = vs[i];
    }
    Subspace anti_coords = rank_kernel_image(sys).kernel;
    std::vector<Vec> vcands(anti_coords.basis());
    for (std::size_t i = 0; i < anti_coords.basis().size(); ++i)
      for (std::size_t j = i + 1; j < anti_coords.basis().size(); ++j)
        vcands.push_back(vec_add(f, anti_coords.basis()[i], anti_coords.basis()[j]));
    for (const auto& vc_pure : vcands) {
      // back to algebra coordinates
      Vec vcoords(a.dim(), f->zero());
      for (std::size_t j = 0; j < pd; ++j)
        vcoords = vec_add(f, vcoords, vec_scale(f, vc_pure[j], pure.basis()[j]));
      Matrix v = a.element(vcoords);
      auto bsq = scalar_square(v);
      if (!bsq || f->is_zero(*bsq) || !rational_negative(*bsq)) continue;
      Matrix uv = u.mul(v);
      if (!(uv == v.mul(u).neg())) continue;
      RrefSpan span(f, a.n() * a.n());
      if (span.insert(unit.vectorize()) && span.insert(u.vectorize()) &&
          span.insert(v.vectorize()) && span.insert(uv.vectorize())) {
        DivisionReport rep;
        rep.division = true;
        rep.method = "quaternion_definite";
        return rep;
      }
    }
  }
  return std::nullopt;
}

bool rational_is_square(const BigRat& q) {
  if (q < 0) return false;
  BigInt num = numerator(q), den = denominator(q);
  BigInt rn = sqrt(num), rd = sqrt(den);
  return rn * rn == num && rd * rd == den;
}

// zero-divisor pair from a nontrivial factorisation m = f1 * f2 of the
// minimal polynomial of an algebra element
DivisionReport zero_divisors_from_factors(const Matrix& theta, const Poly& f1,
                                          const Poly& f2) {
  DivisionReport rep;
  rep.division = false;
  rep.method = "commutative_minpoly";
  Matrix x = poly_apply(f1, theta);
  Matrix y = poly_apply(f2, theta);
  if (x.is_zero() || y.is_zero() || !x.mul(y).is_zero())
    throw std::logic_error("factor witness construction failed");
  rep.witness = std::make_pair(std::move(x), std::move(y));
  return rep;
}

// Rational-side fallbacks once the regular-module route is inconclusive.
DivisionReport rational_fallback(const AlgebraBasis& a, std::uint64_t seed,
                                 int budget) {
  const FieldPtr& f = a.field();
  Rng rng(seed ^ 0xd17ull);
  bool comm = a.commutative();
  for (int attempt = 0; attempt < budget; ++attempt) {
    Vec coords(a.dim(), f->zero());
    for (auto& c : coords) c = f->from_int(std::uniform_int_distribution<int>(-3, 3)(rng));
    Matrix theta = a.element(coords);
    if (theta.is_zero()) continue;
    Poly m = minimal_polynomial(a.left_mult(coords));
    // square factor -> nilpotent part -> zero divisors (any field, any dim)
    Poly g = poly_gcd(f, m, poly_derivative(f, m));
    if (poly_deg(g) >= 1) {
      Poly h = poly_divmod(f, m, g).first;
      return zero_divisors_from_factors(theta, g, h);
    }
    if (comm && poly_deg(m) == static_cast<int>(a.dim())) {
      if (poly_deg(m) == 1) {
        DivisionReport rep{true, "commutative_minpoly", std::nullopt};
        return rep;
      }
      if (poly_deg(m) == 2) {
        // x^2 + b x + c: irreducible over Q iff b^2 - 4c is not a square
        const Scalar& b = m[1];
        const Scalar& c = m[0];
        Scalar disc = f->sub(f->mul(b, b), f->mul(f->from_int(4), c));
        if (!rational_is_square(disc.rational()))
          return DivisionReport{true, "commutative_minpoly", std::nullopt};
        // rational roots -> split -> explicit zero divisors
        BigRat d = disc.rational();
        BigRat root(sqrt(numerator(d)), sqrt(denominator(d)));
        Scalar r1 = f->div(f->sub(Scalar(root), b), f->from_int(2));
        Scalar r2 = f->div(f->sub(f->neg(Scalar(root)), b), f->from_int(2));
        Poly f1{f->neg(r1), f->one()};
        Poly f2{f->neg(r2), f->one()};
        return zero_divisors_from_factors(theta, f1, f2);
      }
    }
  }
  throw InconclusiveError(
      "division test inconclusive over the rationals: no handle found");
}

}  // namespace

DivisionReport is_division_ring(const AlgebraBasis& a, std::uint64_t seed,
                                int budget) {
  if (!a.unital())
    throw ValidationError("division test requires a unital algebra");
  if (a.dim() == 1) return DivisionReport{true, "dimension_one", std::nullopt};

  // deterministic and cheap; settles the definite-quaternion case before the
  // randomized machinery runs
  if (!a.field()->finite())
    if (auto quat = certify_definite_quaternion(a)) return *quat;

  std::vector<Matrix> lgens = a.regular_gens();
  try {
    IrreducibilityReport rep =
        irreducible_test(a.field(), a.dim(), lgens, IrredStrategy::Auto, seed,
                         budget, /*allow_division_shortcut=*/false);
    if (rep.irreducible) return DivisionReport{true, "regular_module", std::nullopt};

    // proper left ideal -> explicit zero-divisor pair
    const Subspace& ideal = *rep.witness;
    Vec ycoords = ideal.basis().front();
    Matrix y = a.element(ycoords);
    Matrix ry = a.right_mult(ycoords);
    Subspace ker = rank_kernel_image(ry).kernel;
    Matrix x = a.element(ker.basis().front());
    if (x.is_zero() || y.is_zero() || !x.mul(y).is_zero())
      throw std::logic_error("zero-divisor extraction failed");
    return DivisionReport{false, "regular_module",
                          std::make_pair(std::move(x), std::move(y))};
  } catch (const InconclusiveError&) {
    if (a.field()->finite()) throw;
    return rational_fallback(a, seed, budget);
  }
}

DoubleCentralizerReport double_centralizer_check(const FieldPtr& field,
                                                 std::size_t n,
                                                 const std::vector<Matrix>& s_gens) {
  AlgebraBasis closure = algebra_closure(field, n, s_gens, true);
  AlgebraBasis t = centralizer_basis(field, n, s_gens);
  AlgebraBasis cc = centralizer_basis(field, n, t.basis());
  bool biequal = cc.span_equal(closure);
  return DoubleCentralizerReport{std::move(t), std::move(cc), std::move(closure),
                                 biequal};
}

}  // namespace skewlin
