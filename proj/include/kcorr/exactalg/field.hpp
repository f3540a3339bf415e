#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace kcorr {

class Coeff;

/// The base field: either the rationals or a prime field F_p (p < 2^31).
class FieldTag {
 public:
  constexpr FieldTag() = default;

  static constexpr FieldTag rational() { return FieldTag(); }
  /// Throws InvalidArity when p is not a prime below 2^31.
  static FieldTag prime(std::uint64_t p);

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr std::uint32_t characteristic() const { return p_; }

  /// "Q" or "Fp:P".
  std::string to_string() const;
  static FieldTag parse(const std::string& text);

  friend constexpr bool operator==(FieldTag a, FieldTag b) { return a.p_ == b.p_; }

 private:
  friend class Coeff;
  constexpr explicit FieldTag(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field scalar. Rational scalars double as integer literals: combining
/// a rational with an F_p scalar maps it through Z[1/b] -> F_p.
class Coeff {
 public:
  Coeff() : rep_(mpq_class(0)) {}
  Coeff(long v) : rep_(mpq_class(v)) {}  // NOLINT: literal conversion is intended
  Coeff(int v) : Coeff(static_cast<long>(v)) {}  // NOLINT
  explicit Coeff(mpq_class q) : rep_(std::move(q)) { std::get<mpq_class>(rep_).canonicalize(); }

  static Coeff zero(FieldTag k);
  static Coeff one(FieldTag k);
  static Coeff from_integer(FieldTag k, long v);
  /// num/den mapped into k; DivisionByZero when den vanishes in k.
  static Coeff from_rational(FieldTag k, const mpq_class& q);

  FieldTag field() const;
  /// Map into k (identity when already there). Throws FieldMismatch for F_p -> F_q.
  Coeff in(FieldTag k) const;

  bool is_zero() const;
  bool is_one() const;
  /// Rational value; only valid in characteristic 0.
  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
  /// Residue in [0, p); only valid in characteristic p.
  std::uint32_t residue() const { return std::get<Residue>(rep_).r; }

  Coeff inverse() const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator/=(const Coeff& o);
  Coeff operator-() const;

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend Coeff operator/(Coeff a, const Coeff& b) { return a /= b; }
  friend bool operator==(const Coeff& a, const Coeff& b);
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  /// Integers print bare, fractions as a/b; residues as their representative in [0, p).
  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t r;
    std::uint32_t p;
  };
  explicit Coeff(Residue r) : rep_(r) {}
  static Coeff residue_of(std::uint64_t r, std::uint32_t p) {
    return Coeff(Residue{static_cast<std::uint32_t>(r % p), p});
  }
  // Bring both operands into a common field.
  static void unify(Coeff& a, Coeff& b);

  std::variant<Residue, mpq_class> rep_;
};

}  // namespace kcorr
