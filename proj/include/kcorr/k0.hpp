#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kcorr/corrcat.hpp"

namespace kcorr {

/// Rank of a matrix over the fraction field of k[X], X integral; NotIntegral otherwise.
long matrix_rank(const QMatrix& m, const VarietyPtr& x);
/// Rank of the underlying projective module.
long rank(const CorrObject& phi);

using ObjectId = std::size_t;
/// A formal Z-combination of registered objects.
using FormalSum = std::map<ObjectId, std::int64_t>;

/// Canonical coset representative of a formal sum modulo the known relations.
struct K0Class {
  std::map<ObjectId, std::int64_t> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const K0Class& a, const K0Class& b) { return a.coeffs == b.coeffs; }
  std::string to_string() const;
};

enum class Verdict { CertifiedEqual, DistinctByRank, Undetermined };
std::string to_string(Verdict v);

/// K_0 of one category A(X,Y), known only through registered certificates.
///
/// Classes merge through verified isomorphisms (union-find); direct-sum and
/// zero relations are recorded as integer relations and reduced in Hermite
/// normal form. Ranks bound the answer from the other side.
class K0Ledger {
 public:
  K0Ledger(VarietyPtr x, VarietyPtr y);

  const VarietyPtr& X() const { return x_; }
  const VarietyPtr& Y() const { return y_; }
  std::size_t size() const { return objects_.size(); }
  const CorrObject& object(ObjectId id) const;
  std::size_t certificates() const { return certificates_; }

  /// Register an object (data-equal objects share an id). Block-diagonal
  /// objects are split and their sum relation recorded.
  ObjectId add(const CorrObject& obj);
  std::optional<ObjectId> find(const CorrObject& obj) const;
  /// Id of a + b, with the relation [a + b] = [a] + [b].
  ObjectId add_sum(ObjectId a, ObjectId b);
  /// Merge along a verified certificate; InvalidCertificate if it does not verify.
  void register_iso(const IsoCertificate& cert);

  ObjectId representative(ObjectId id) const;
  /// UnknownObject for ids that were never registered.
  K0Class class_of(const FormalSum& sum) const;
  K0Class class_of(const CorrObject& obj) const;
  /// Blocks of the union-find partition, each sorted, ordered by smallest id.
  std::vector<std::vector<ObjectId>> partition() const;
  /// Rank of the formal sum, when X is integral.
  std::optional<std::int64_t> rank_of(const FormalSum& sum) const;
  Verdict compare(const FormalSum& a, const FormalSum& b) const;

 private:
  void check(ObjectId id) const;
  ObjectId find_root(ObjectId id) const;
  void relate(std::map<ObjectId, std::int64_t> relation);

  VarietyPtr x_, y_;
  std::vector<CorrObject> objects_;
  mutable std::vector<ObjectId> parent_;
  std::vector<std::map<ObjectId, std::int64_t>> relations_;
  std::vector<std::optional<long>> ranks_;
  std::size_t certificates_ = 0;
};

K0Ledger& k0_register(K0Ledger& ledger, const IsoCertificate& cert);
K0Class k0_class(const K0Ledger& ledger, const FormalSum& sum);

/// Class of sum_i sum_j c_i d_j [Psi_j o Phi_i], registered in target.
K0Class k0_compose(const K0Ledger& vu, const K0Ledger& ux, const FormalSum& a, const FormalSum& b, K0Ledger& target);

/// Certificate Phi2 o Phi1 -> Phi2' o Phi1' from certificates Phi1 -> Phi1' and Phi2 -> Phi2'.
IsoCertificate transport_certificate(const IsoCertificate& c1, const IsoCertificate& c2);
/// c2 after c1.
IsoCertificate chain(const IsoCertificate& c1, const IsoCertificate& c2);

/// Search for an isomorphism between objects of A(pt,pt) with n <= 3: image
/// matching over Q, conjugation by at most four transvections over F_p.
std::optional<IsoCertificate> find_pt_isomorphism(const CorrObject& a, const CorrObject& b);

}  // namespace kcorr
