#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "kcorr/exactalg/field.hpp"

namespace kcorr {

enum class MonomialOrder { DegRevLex, Lex };

std::string to_string(MonomialOrder order);

/// Exponent vector indexed positionally by the ambient variable list.
class Monomial {
 public:
  using Exponent = std::uint16_t;
  using Storage = boost::container::small_vector<Exponent, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> e) : exps_(e) { recount(); }
  explicit Monomial(Storage e) : exps_(std::move(e)) { recount(); }

  static Monomial variable(std::size_t nvars, std::size_t i, Exponent power = 1);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  const Storage& exponents() const { return exps_; }

  bool divides(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Pad an unbound (empty) monomial to nvars zeros.
  Monomial padded(std::size_t nvars) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  void recount();
  Storage exps_;
  std::uint32_t degree_ = 0;
};

/// Three-way comparison under the order: negative, zero, positive.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

/// A polynomial ring k[v_1..v_r] with a fixed monomial order. Immutable.
class PolyRing {
 public:
  PolyRing(FieldTag field, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::DegRevLex);

  static std::shared_ptr<const PolyRing> make(FieldTag field, std::vector<std::string> vars,
                                              MonomialOrder order = MonomialOrder::DegRevLex) {
    return std::make_shared<const PolyRing>(field, std::move(vars), order);
  }

  FieldTag field() const { return field_; }
  MonomialOrder order() const { return order_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  /// Index of a variable name, or -1.
  std::ptrdiff_t index_of(const std::string& name) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.order_ == b.order_ && a.vars_ == b.vars_;
  }

 private:
  FieldTag field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// A polynomial: nonzero terms sorted strictly descending in the ring's order.
///
/// A Poly with a null ring is an unbound literal (a constant); it adopts the ring
/// of whatever it is combined with.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT: literal constants
  Poly(int c) : Poly(static_cast<long>(c)) {}  // NOLINT
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Coeff& c);
  static Poly variable(RingPtr ring, std::size_t i);
  static Poly term(RingPtr ring, Monomial m, const Coeff& c);
  /// Build from unsorted terms; like terms are combined and zeros dropped.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Constant coefficient (zero if absent).
  Coeff constant_term() const;
  const Term& leading() const { return terms_.front(); }
  /// All terms except the leading one.
  Poly tail() const {
    Poly p(ring_);
    p.terms_.assign(terms_.begin() + 1, terms_.end());
    return p;
  }
  std::uint32_t total_degree() const;

  /// Rebind an unbound literal into ring, or check that the rings agree.
  Poly bound(const RingPtr& ring) const;
  /// Move to another ring by sending variable i to variable var_map[i].
  Poly remapped(const RingPtr& target, std::span<const std::size_t> var_map) const;
  Poly scaled(const Coeff& c) const;
  Poly monic() const;
  /// this - c * m * g, exploiting sortedness.
  Poly minus_term_times(const Coeff& c, const Monomial& m, const Poly& g) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  /// Structural equality of the term lists (rings are checked for compatibility).
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Canonical text, e.g. "x^2*y - 3/2*y + 1".
  std::string to_string() const;

 private:
  static RingPtr common_ring(const Poly& a, const Poly& b);
  RingPtr ring_;
  std::vector<Term> terms_;
};

}  // namespace kcorr

#include "kcorr/exactalg/poly_eval.hpp"
