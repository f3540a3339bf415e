#pragma once

#include <vector>

#include "kcorr/exactalg/poly.hpp"

namespace kcorr {

/// A reduced Groebner basis: monic, interreduced, sorted by ascending leading
/// monomial. The empty list is the zero ideal; [1] is the unit ideal.
class GroebnerBasis {
 public:
  explicit GroebnerBasis(RingPtr ring) : ring_(std::move(ring)) {}

  const RingPtr& ring() const { return ring_; }
  MonomialOrder order() const { return ring_->order(); }
  const std::vector<Poly>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero_ideal() const { return gens_.empty(); }
  bool is_unit_ideal() const { return gens_.size() == 1 && gens_[0].is_constant(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.gens_ == b.gens_;
  }

 private:
  friend GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Poly>& gens);
  RingPtr ring_;
  std::vector<Poly> gens_;
};

/// Reduced basis of the ideal generated by gens in ring. Generators bound to a
/// ring with the same variables and field but another order are re-sorted.
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Poly>& gens);
/// Convenience form: the ring is taken from the generators, with its order replaced.
GroebnerBasis buchberger(const std::vector<Poly>& gens, MonomialOrder order);

/// Remainder of full multivariate division by G.
Poly normal_form(const Poly& f, const GroebnerBasis& G);
/// Remainder of division by an arbitrary list of monic divisors.
Poly reduce(const Poly& f, const std::vector<Poly>& divisors);

bool quotient_eq(const Poly& f, const Poly& g, const GroebnerBasis& G);

/// The same ring with another monomial order.
RingPtr with_order(const RingPtr& ring, MonomialOrder order);

}  // namespace kcorr
