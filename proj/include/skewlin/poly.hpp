#ifndef SKEWLIN_POLY_HPP
#define SKEWLIN_POLY_HPP

#include <utility>
#include <vector>

#include "skewlin/linalg.hpp"
#include "skewlin/matrix.hpp"

namespace skewlin {

/// Dense polynomial over a runtime field, ascending coefficients,
/// trimmed (empty vector = zero polynomial).
using Poly = std::vector<Scalar>;

Poly poly_trim(const FieldPtr& f, Poly p);
int poly_deg(const Poly& p);  // -1 for zero
bool poly_eq(const FieldPtr& f, const Poly& a, const Poly& b);
Poly poly_x(const FieldPtr& f);  // the monomial x
Poly poly_add(const FieldPtr& f, const Poly& a, const Poly& b);
Poly poly_sub(const FieldPtr& f, const Poly& a, const Poly& b);
Poly poly_mul(const FieldPtr& f, const Poly& a, const Poly& b);
/// quotient and remainder; b nonzero
std::pair<Poly, Poly> poly_divmod(const FieldPtr& f, const Poly& a, const Poly& b);
Poly poly_monic(const FieldPtr& f, Poly p);
Poly poly_gcd(const FieldPtr& f, Poly a, Poly b);  // monic
Poly poly_derivative(const FieldPtr& f, const Poly& p);
Scalar poly_eval(const FieldPtr& f, const Poly& p, const Scalar& x);
Matrix poly_apply(const Poly& p, const Matrix& m);  // p(M)

/// Minimal polynomial of a square matrix, via Krylov iteration on the
/// vectorized powers.  Monic; exact over any field.
Poly minimal_polynomial(const Matrix& m);

/// Complete factorisation over a finite field by trial division with
/// enumerated monic divisors, ascending (degree, index) order — canonical
/// and deterministic.  Returns (irreducible factor, multiplicity) pairs.
std::vector<std::pair<Poly, int>> factor_poly_finite(const FieldPtr& f, Poly p);

}  // namespace skewlin

#endif
