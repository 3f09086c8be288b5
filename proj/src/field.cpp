#include "skewlin/field.hpp"

#include <algorithm>
#include <cmath>

#include "skewlin/errors.hpp"

namespace skewlin {
namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
  // extended Euclid; a != 0 mod p
  std::int64_t t = 0, newt = 1, r = p, newr = mod_p(a, p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - q * newt);
    std::tie(r, newr) = std::make_pair(newr, r - q * newr);
  }
  return mod_p(t, p);
}

// --- dense polynomials over F_p, ascending coefficients -------------------

using PPoly = std::vector<std::int64_t>;

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

PPoly pmul(const PPoly& f, const PPoly& g, std::int64_t p) {
  if (f.empty() || g.empty()) return {};
  PPoly h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      h[i + j] = mod_p(h[i + j] + f[i] * g[j], p);
  ptrim(h);
  return h;
}

// remainder of f by monic-normalisable g
PPoly pmod(PPoly f, const PPoly& g, std::int64_t p) {
  ptrim(f);
  std::int64_t lead_inv = inv_mod_p(g.back(), p);
  while (pdeg(f) >= pdeg(g)) {
    std::int64_t c = mod_p(f.back() * lead_inv, p);
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = mod_p(f[shift + i] - c * g[i], p);
    ptrim(f);
  }
  return f;
}

bool pdivides(const PPoly& d, const PPoly& f, std::int64_t p) {
  return pmod(f, d, p).empty();
}

// Enumerate the polynomial with the given index, degree exactly `deg`,
// monic, over F_p.
PPoly monic_by_index(std::uint64_t index, int deg, std::int64_t p) {
  PPoly f(deg + 1, 0);
  f[deg] = 1;
  for (int i = 0; i < deg; ++i) {
    f[i] = static_cast<std::int64_t>(index % p);
    index /= p;
  }
  return f;
}

std::uint64_t pow_u64(std::int64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

// Irreducibility over F_p: exhaustive root check suffices through degree 3,
// trial division by all lower-degree monic polynomials beyond that.
bool irreducible_over_prime(const PPoly& f, std::int64_t p) {
  int deg = pdeg(f);
  if (deg < 1) return false;
  if (deg == 1) return true;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = 0;
    for (int i = deg; i >= 0; --i) v = mod_p(v * x + f[i], p);
    if (v == 0) return false;
  }
  if (deg <= 3) return true;
  for (int d = 2; d <= deg / 2; ++d) {
    std::uint64_t count = pow_u64(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (pdivides(monic_by_index(idx, d, p), f, p)) return false;
  }
  return true;
}

// extended Euclid over F_p[x]; returns u with u*a = gcd(a, m) (mod m)
PPoly poly_inverse_mod(const PPoly& a, const PPoly& m, std::int64_t p) {
  PPoly r0 = m, r1 = pmod(a, m, p);
  PPoly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    PPoly q;
    PPoly rem = r0;
    std::int64_t lead_inv = inv_mod_p(r1.back(), p);
    q.assign(std::max<std::size_t>(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, 1), 0);
    while (pdeg(rem) >= pdeg(r1)) {
      std::int64_t c = mod_p(rem.back() * lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = mod_p(rem[shift + i] - c * r1[i], p);
      ptrim(rem);
    }
    ptrim(q);
    PPoly t2_part = pmul(q, t1, p);
    PPoly t2 = t0;
    t2.resize(std::max(t2.size(), t2_part.size()), 0);
    for (std::size_t i = 0; i < t2_part.size(); ++i)
      t2[i] = mod_p(t2[i] - t2_part[i], p);
    ptrim(t2);
    r0 = r1;
    r1 = rem;
    t0 = t1;
    t1 = t2;
  }
  // r0 = gcd, a invertible mod m iff deg gcd == 0
  std::int64_t g_inv = inv_mod_p(r0.empty() ? 1 : r0[0], p);
  for (auto& c : t0) c = mod_p(c * g_inv, p);
  return t0;
}

}  // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  degree_ = spec_.kind == FieldKind::Extension
                ? static_cast<int>(spec_.modulus.size()) - 1
                : 1;
}

FieldPtr Field::make(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::Rational:
      if (spec.p != 0 || !spec.modulus.empty())
        throw ValidationError("rational field spec carries no characteristic or modulus");
      break;
    case FieldKind::Prime:
      if (!is_prime(spec.p))
        throw ValidationError("NonPrimeCharacteristic: p = " + std::to_string(spec.p));
      if (!spec.modulus.empty())
        throw ValidationError("prime field spec carries no modulus");
      break;
    case FieldKind::Extension: {
      if (!is_prime(spec.p))
        throw ValidationError("NonPrimeCharacteristic: p = " + std::to_string(spec.p));
      if (spec.p > 13)
        throw ValidationError("extension characteristic limited to p <= 13");
      int deg = static_cast<int>(spec.modulus.size()) - 1;
      if (deg < 2 || deg > 8)
        throw ValidationError("extension degree must lie in [2, 8]");
      if (spec.modulus.back() != 1)
        throw ValidationError("modulus must be monic");
      for (auto c : spec.modulus)
        if (c < 0 || c >= spec.p)
          throw ValidationError("modulus coefficients must be residues in [0, p)");
      if (!irreducible_over_prime(spec.modulus, spec.p))
        throw ValidationError("ReducibleModulus");
      break;
    }
  }
  return FieldPtr(new Field(spec));
}

std::optional<std::uint64_t> Field::order() const {
  if (!finite()) return std::nullopt;
  return pow_u64(spec_.p, degree_);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(mod_p(v, spec_.p));
    case FieldKind::Extension: {
      std::vector<std::int64_t> c(degree_, 0);
      c[0] = mod_p(v, spec_.p);
      return Scalar(std::move(c));
    }
    case FieldKind::Rational:
      return Scalar(BigRat(v));
  }
  throw std::logic_error("unreachable");
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(mod_p(a.residue() + b.residue(), spec_.p));
    case FieldKind::Extension: {
      std::vector<std::int64_t> c(degree_);
      for (int i = 0; i < degree_; ++i)
        c[i] = mod_p(a.coeffs()[i] + b.coeffs()[i], spec_.p);
      return Scalar(std::move(c));
    }
    case FieldKind::Rational:
      return Scalar(BigRat(a.rational() + b.rational()));
  }
  throw std::logic_error("unreachable");
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::neg(const Scalar& a) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(mod_p(-a.residue(), spec_.p));
    case FieldKind::Extension: {
      std::vector<std::int64_t> c(degree_);
      for (int i = 0; i < degree_; ++i) c[i] = mod_p(-a.coeffs()[i], spec_.p);
      return Scalar(std::move(c));
    }
    case FieldKind::Rational:
      return Scalar(BigRat(-a.rational()));
  }
  throw std::logic_error("unreachable");
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(mod_p(a.residue() * b.residue(), spec_.p));
    case FieldKind::Extension: {
      PPoly prod = pmul(a.coeffs(), b.coeffs(), spec_.p);
      PPoly red = prod.empty() ? PPoly{} : pmod(prod, spec_.modulus, spec_.p);
      red.resize(degree_, 0);
      return Scalar(std::move(red));
    }
    case FieldKind::Rational:
      return Scalar(BigRat(a.rational() * b.rational()));
  }
  throw std::logic_error("unreachable");
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(inv_mod_p(a.residue(), spec_.p));
    case FieldKind::Extension: {
      PPoly u = poly_inverse_mod(a.coeffs(), spec_.modulus, spec_.p);
      u.resize(degree_, 0);
      return Scalar(std::move(u));
    }
    case FieldKind::Rational:
      return Scalar(BigRat(1 / a.rational()));
  }
  throw std::logic_error("unreachable");
}

bool Field::is_zero(const Scalar& a) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return a.residue() == 0;
    case FieldKind::Extension:
      return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                         [](std::int64_t c) { return c == 0; });
    case FieldKind::Rational:
      return a.rational() == 0;
  }
  throw std::logic_error("unreachable");
}

bool Field::is_one(const Scalar& a) const { return a == one(); }

Scalar Field::element(std::uint64_t index) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return Scalar(static_cast<std::int64_t>(index));
    case FieldKind::Extension: {
      std::vector<std::int64_t> c(degree_, 0);
      for (int i = 0; i < degree_; ++i) {
        c[i] = static_cast<std::int64_t>(index % spec_.p);
        index /= spec_.p;
      }
      return Scalar(std::move(c));
    }
    case FieldKind::Rational:
      throw std::logic_error("element enumeration requires a finite field");
  }
  throw std::logic_error("unreachable");
}

std::uint64_t Field::index_of(const Scalar& a) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return static_cast<std::uint64_t>(a.residue());
    case FieldKind::Extension: {
      std::uint64_t idx = 0;
      for (int i = degree_ - 1; i >= 0; --i)
        idx = idx * spec_.p + static_cast<std::uint64_t>(a.coeffs()[i]);
      return idx;
    }
    case FieldKind::Rational:
      throw std::logic_error("element enumeration requires a finite field");
  }
  throw std::logic_error("unreachable");
}

Scalar Field::random_element(Rng& rng) const {
  if (finite()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, *order() - 1);
    return element(dist(rng));
  }
  // small rationals keep entry growth modest in the exact pipelines
  std::uniform_int_distribution<std::int64_t> num(-9, 9);
  std::uniform_int_distribution<std::int64_t> den(1, 9);
  return Scalar(BigRat(num(rng), den(rng)));
}

Scalar Field::random_nonzero(Rng& rng) const {
  for (;;) {
    Scalar s = random_element(rng);
    if (!is_zero(s)) return s;
  }
}

std::string Field::to_string(const Scalar& a) const {
  switch (spec_.kind) {
    case FieldKind::Prime:
      return std::to_string(a.residue());
    case FieldKind::Extension: {
      std::string out = "[";
      for (int i = 0; i < degree_; ++i) {
        if (i) out += ",";
        out += std::to_string(a.coeffs()[i]);
      }
      return out + "]";
    }
    case FieldKind::Rational: {
      const BigRat& q = a.rational();
      std::string out = numerator(q).str();
      if (denominator(q) != 1) out += "/" + denominator(q).str();
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Scalar Field::parse(const std::string& text) const {
  auto fail = [&](const std::string& why) -> Scalar {
    throw ParseError("bad scalar '" + text + "': " + why);
  };
  switch (spec_.kind) {
    case FieldKind::Prime: {
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        return fail("expected a decimal residue");
      std::int64_t v = 0;
      for (char ch : text) {
        v = v * 10 + (ch - '0');
        if (v >= spec_.p * 10) break;  // avoid pointless overflow
      }
      if (v >= spec_.p) return fail("residue out of range for p = " + std::to_string(spec_.p));
      return Scalar(v);
    }
    case FieldKind::Extension:
      return fail("extension scalars are coefficient arrays, not strings");
    case FieldKind::Rational: {
      auto slash = text.find('/');
      try {
        BigInt num(text.substr(0, slash));
        BigInt den = slash == std::string::npos ? BigInt(1) : BigInt(text.substr(slash + 1));
        if (den <= 0) return fail("denominator must be positive");
        BigRat q(num, den);
        if (to_string(Scalar(q)) != text) return fail("not in lowest terms");
        return Scalar(std::move(q));
      } catch (const std::exception&) {
        return fail("expected 'num' or 'num/den'");
      }
    }
  }
  throw std::logic_error("unreachable");
}

bool Field::valid(const Scalar& a) const {
  switch (spec_.kind) {
    case FieldKind::Prime: {
      try {
        std::int64_t r = a.residue();
        return r >= 0 && r < spec_.p;
      } catch (const std::bad_variant_access&) {
        return false;
      }
    }
    case FieldKind::Extension: {
      try {
        const auto& c = a.coeffs();
        if (static_cast<int>(c.size()) != degree_) return false;
        return std::all_of(c.begin(), c.end(), [&](std::int64_t v) {
          return v >= 0 && v < spec_.p;
        });
      } catch (const std::bad_variant_access&) {
        return false;
      }
    }
    case FieldKind::Rational: {
      try {
        (void)a.rational();
        return true;
      } catch (const std::bad_variant_access&) {
        return false;
      }
    }
  }
  return false;
}

}  // namespace skewlin
