#ifndef SKEWLIN_FIELD_HPP
#define SKEWLIN_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace skewlin {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Rng = std::mt19937_64;

enum class FieldKind { Prime, Extension, Rational };

/// Construction recipe for a ground field: F_p, F_p[x]/(modulus), or Q.
struct FieldSpec {
  FieldKind kind = FieldKind::Prime;
  std::int64_t p = 0;
  /// Monic irreducible modulus, ascending coefficients (extension only).
  std::vector<std::int64_t> modulus;

  static FieldSpec prime(std::int64_t p) { return {FieldKind::Prime, p, {}}; }
  static FieldSpec extension(std::int64_t p, std::vector<std::int64_t> mod) {
    return {FieldKind::Extension, p, std::move(mod)};
  }
  static FieldSpec rationals() { return {FieldKind::Rational, 0, {}}; }

  bool operator==(const FieldSpec&) const = default;
};

/// One field element.  Canonical representations throughout: residues in
/// [0,p), extension coefficient vectors of length = degree, rationals in
/// lowest terms with positive denominator (maintained by cpp_rational).
class Scalar {
 public:
  Scalar() : rep_(std::int64_t{0}) {}
  explicit Scalar(std::int64_t residue) : rep_(residue) {}
  explicit Scalar(std::vector<std::int64_t> coeffs) : rep_(std::move(coeffs)) {}
  explicit Scalar(BigRat q) : rep_(std::move(q)) {}

  bool operator==(const Scalar&) const = default;

  std::int64_t residue() const { return std::get<std::int64_t>(rep_); }
  const std::vector<std::int64_t>& coeffs() const {
    return std::get<std::vector<std::int64_t>>(rep_);
  }
  const BigRat& rational() const { return std::get<BigRat>(rep_); }

 private:
  std::variant<std::int64_t, std::vector<std::int64_t>, BigRat> rep_;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Ground-field arithmetic.  Immutable; all operations are pure.
class Field {
 public:
  /// Validates the spec and builds a field handle.  Throws ValidationError
  /// on a non-prime characteristic or a reducible/invalid modulus.
  static FieldPtr make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  FieldKind kind() const { return spec_.kind; }
  std::int64_t characteristic() const { return spec_.p; }
  int degree() const { return degree_; }
  bool finite() const { return spec_.kind != FieldKind::Rational; }
  /// Number of elements (finite fields only).
  std::optional<std::uint64_t> order() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  /// Multiplicative inverse; precondition a != 0.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  /// Canonical element enumeration, index in [0, order).  Element 0 is zero
  /// and element 1 is one.  Finite fields only.
  Scalar element(std::uint64_t index) const;
  std::uint64_t index_of(const Scalar& a) const;

  Scalar random_element(Rng& rng) const;
  Scalar random_nonzero(Rng& rng) const;

  /// Wire format: prime residue as decimal string, rational as "num/den"
  /// ("num" when the denominator is 1).  Extension elements are arrays of
  /// base-field strings and are handled by the document layer.
  std::string to_string(const Scalar& a) const;
  Scalar parse(const std::string& text) const;

  /// Checks that `a` is a canonical element of this field.
  bool valid(const Scalar& a) const;

 private:
  explicit Field(FieldSpec spec);

  FieldSpec spec_;
  int degree_ = 1;
};

}  // namespace skewlin

#endif
