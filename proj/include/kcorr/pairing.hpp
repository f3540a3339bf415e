#pragma once

#include "kcorr/corrcat.hpp"
#include "kcorr/exactalg/matrix.hpp"

namespace kcorr {

/// The index bijection l(e_{i,a}) = e_{i + a*n1} (0-based), i inside a block of size n1.
struct FlattenMap {
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;

  Eigen::Index operator()(Eigen::Index i, Eigen::Index a) const { return i + a * n1; }
  Eigen::Index inner(Eigen::Index flat) const { return flat % n1; }
  Eigen::Index outer(Eigen::Index flat) const { return flat / n1; }
  Eigen::Index size() const { return n1 * n2; }
};

/// Apply the evaluation of phi1 to every entry of m (a matrix over k[U]) and flatten.
QMatrix evaluate_blocks(Evaluator& phi1, Eigen::Index n1, const QMatrix& m);

/// Phi2 o Phi1 for Phi1 in A(V,U), Phi2 in A(U,X).
CorrObject compose_objects(const CorrObject& phi1, const CorrObject& phi2);

/// alpha2 (.) alpha1 for alpha1 over (V,U) and alpha2 over (U,X).
CorrMorphism compose_morphisms(const CorrMorphism& alpha2, const CorrMorphism& alpha1);

/// A deliberately broken variant of compose_morphisms that lays the blocks of
/// alpha2 out in the transposed order, for mutation testing of the law harness.
CorrMorphism compose_morphisms_shuffled(const CorrMorphism& alpha2, const CorrMorphism& alpha1);

/// Phi3 o (Phi2 o Phi1) and (Phi3 o Phi2) o Phi1 are data-identical.
bool strict_associativity_check(const CorrObject& phi1, const CorrObject& phi2, const CorrObject& phi3);

/// Certified permutation iso (Phi1 + Phi1') o Phi2 -> Phi1 o Phi2 + Phi1' o Phi2.
IsoCertificate sum_left_certificate(const CorrObject& phi1, const CorrObject& phi1b, const CorrObject& phi2);
/// Phi1 o (Phi2 + Phi2') -> Phi1 o Phi2 + Phi1 o Phi2'; the two sides are data-equal.
IsoCertificate sum_right_certificate(const CorrObject& phi1, const CorrObject& phi2, const CorrObject& phi2b);

}  // namespace kcorr
