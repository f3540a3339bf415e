#pragma once

#include <vector>

#include "kcorr/pairing.hpp"

namespace kcorr {

/// f^*(Phi) = Phi o sigma(f) for f: X' -> X.
CorrObject pullback_obj(const VarMorphism& f, const CorrObject& phi);
CorrMorphism pullback_mor(const VarMorphism& f, const CorrMorphism& alpha);
/// g_*(Phi) = sigma(g) o Phi for g: Y -> Y'.
CorrObject pushforward_obj(const VarMorphism& g, const CorrObject& phi);
CorrMorphism pushforward_mor(const VarMorphism& g, const CorrMorphism& alpha);

/// The same functors computed literally through graph composition.
CorrObject pullback_by_graph(const VarMorphism& f, const CorrObject& phi);
CorrObject pushforward_by_graph(const VarMorphism& g, const CorrObject& phi);

/// f* Phi in A(X x U, X' x U') for f: U -> U' and Phi in A(X, X').
CorrObject box_product(const VarMorphism& f, const CorrObject& phi);
CorrMorphism box_mor(const VarMorphism& f, const CorrMorphism& alpha);

/// An object of A(X,Y) with n commuting automorphisms and their inverses.
struct AutObject {
  CorrObject base;
  std::vector<CorrMorphism> theta;
  std::vector<CorrMorphism> theta_inv;

  std::size_t arity() const { return theta.size(); }
  /// First violated invariant, or empty.
  std::string violation() const;
  friend bool operator==(const AutObject& a, const AutObject& b);
};

struct AutMorphism {
  AutObject src;
  AutObject dst;
  CorrMorphism underlying;

  std::string violation() const;
};

/// Validated constructors; InvalidObject / InvalidMorphism on failure.
AutObject make_aut_object(const CorrObject& base, const std::vector<QMatrix>& theta,
                          const std::vector<QMatrix>& theta_inv);
AutMorphism make_aut_morphism(const AutObject& src, const AutObject& dst, const QMatrix& mat);

/// Number of torus coordinates when phi's target is Y x G_m^n, else ShapeError.
int torus_arity(const VarietyPtr& target);

AutObject rho(const CorrObject& phi);
AutMorphism rho(const CorrMorphism& alpha);
CorrObject rho_inverse(const AutObject& a, int n);
CorrMorphism rho_inverse(const AutMorphism& m, int n);

/// f^*_n and g_{*,n} on objects with automorphisms.
AutObject pullback_aut(const VarMorphism& f, const AutObject& a);
AutObject pushforward_aut(const VarMorphism& g, const AutObject& a);

}  // namespace kcorr
