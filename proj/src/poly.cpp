#include "skewlin/poly.hpp"

#include <stdexcept>

namespace skewlin {

Poly poly_trim(const FieldPtr& f, Poly p) {
  while (!p.empty() && f->is_zero(p.back())) p.pop_back();
  return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool poly_eq(const FieldPtr& f, const Poly& a, const Poly& b) {
  return poly_trim(f, a) == poly_trim(f, b);
}

Poly poly_x(const FieldPtr& f) { return {f->zero(), f->one()}; }

Poly poly_add(const FieldPtr& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f->add(r[i], b[i]);
  return poly_trim(f, std::move(r));
}

Poly poly_sub(const FieldPtr& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f->sub(r[i], b[i]);
  return poly_trim(f, std::move(r));
}

Poly poly_mul(const FieldPtr& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f->is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = f->add(r[i + j], f->mul(a[i], b[j]));
  }
  return poly_trim(f, std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const FieldPtr& f, const Poly& a, const Poly& b) {
  Poly den = poly_trim(f, b);
  if (den.empty()) throw std::domain_error("polynomial division by zero");
  Poly rem = poly_trim(f, a);
  if (poly_deg(rem) < poly_deg(den)) return {{}, rem};
  Poly quo(rem.size() - den.size() + 1, f->zero());
  Scalar lead_inv = f->inv(den.back());
  while (poly_deg(rem) >= poly_deg(den)) {
    std::size_t shift = rem.size() - den.size();
    Scalar c = f->mul(rem.back(), lead_inv);
    quo[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      rem[shift + i] = f->sub(rem[shift + i], f->mul(c, den[i]));
    rem = poly_trim(f, std::move(rem));
  }
  return {poly_trim(f, std::move(quo)), rem};
}

Poly poly_monic(const FieldPtr& f, Poly p) {
  p = poly_trim(f, std::move(p));
  if (p.empty() || f->is_one(p.back())) return p;
  Scalar inv = f->inv(p.back());
  for (auto& c : p) c = f->mul(inv, c);
  return p;
}

Poly poly_gcd(const FieldPtr& f, Poly a, Poly b) {
  a = poly_trim(f, std::move(a));
  b = poly_trim(f, std::move(b));
  while (!b.empty()) {
    Poly r = poly_divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, std::move(a));
}

Poly poly_derivative(const FieldPtr& f, const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1, f->zero());
  for (std::size_t i = 1; i < p.size(); ++i)
    d[i - 1] = f->mul(f->from_int(static_cast<std::int64_t>(i)), p[i]);
  return poly_trim(f, std::move(d));
}

Scalar poly_eval(const FieldPtr& f, const Poly& p, const Scalar& x) {
  Scalar acc = f->zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f->add(f->mul(acc, x), p[i]);
  return acc;
}

Matrix poly_apply(const Poly& p, const Matrix& m) {
  const FieldPtr& f = m.field();
  Matrix acc = Matrix::zero(f, m.rows(), m.cols());
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc.mul(m);
    for (std::size_t d = 0; d < m.rows(); ++d)
      acc.at(d, d) = f->add(acc.at(d, d), p[i]);
  }
  return acc;
}

Poly minimal_polynomial(const Matrix& m) {
  const FieldPtr& f = m.field();
  std::size_t n = m.rows();
  RrefSpan span(f, n * n);
  std::vector<Vec> powers;
  Matrix cur = Matrix::identity(f, n);
  for (;;) {
    Vec v = cur.vectorize();
    if (!span.insert(v)) {
      // first dependence: solve for the combination over earlier powers
      std::size_t k = powers.size();
      Matrix sys(f, n * n, k);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n * n; ++i) sys.at(i, j) = powers[j][i];
      auto x = solve_linear(sys, v);
      Poly p(k + 1, f->zero());
      for (std::size_t i = 0; i < k; ++i) p[i] = f->neg((*x)[i]);
      p[k] = f->one();
      return p;
    }
    powers.push_back(std::move(v));
    cur = cur.mul(m);
  }
}

namespace {

// monic polynomial of exactly this degree with the given enumeration index
Poly monic_by_index(const FieldPtr& f, int deg, std::uint64_t index) {
  std::uint64_t q = *f->order();
  Poly p(static_cast<std::size_t>(deg) + 1, f->zero());
  for (int i = 0; i < deg; ++i) {
    p[static_cast<std::size_t>(i)] = f->element(index % q);
    index /= q;
  }
  p[static_cast<std::size_t>(deg)] = f->one();
  return p;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_poly_finite(const FieldPtr& f, Poly p) {
  p = poly_monic(f, std::move(p));
  std::vector<std::pair<Poly, int>> factors;
  std::uint64_t q = *f->order();
  for (int d = 1; poly_deg(p) > 0; ++d) {
    if (2 * d > poly_deg(p)) {
      factors.emplace_back(p, 1);  // what remains is irreducible
      break;
    }
    for (std::uint64_t idx = 0; idx < pow_u64(q, d); ++idx) {
      Poly cand = monic_by_index(f, d, idx);
      int mult = 0;
      for (;;) {
        auto [quo, rem] = poly_divmod(f, p, cand);
        if (!rem.empty()) break;
        p = std::move(quo);
        ++mult;
      }
      if (mult) factors.emplace_back(std::move(cand), mult);
      if (poly_deg(p) < 2 * d) break;
    }
  }
  return factors;
}

}  // namespace skewlin
