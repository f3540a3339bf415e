#pragma once

#include <string>
#include <vector>

#include "kcorr/varieties.hpp"

namespace kcorr {

/// Re-validate invariants after every operation (off by default).
bool debug_validation();
void set_debug_validation(bool on);

/// An object of A(X,Y): an idempotent p over k[X] and one corner matrix per
/// coordinate of Y, so that y_j acts by A_j.
class CorrObject {
 public:
  CorrObject(VarietyPtr x, VarietyPtr y, QMatrix p, std::vector<QMatrix> gens);

  const VarietyPtr& X() const { return x_; }
  const VarietyPtr& Y() const { return y_; }
  Eigen::Index n() const { return p_.rows(); }
  const QMatrix& p() const { return p_; }
  const std::vector<QMatrix>& gens() const { return gens_; }
  const QMatrix& gen(std::size_t j) const { return gens_[j]; }

  /// First violated invariant, or empty when the data is a valid object.
  std::string violation() const;

  friend bool operator==(const CorrObject& a, const CorrObject& b);
  friend bool operator!=(const CorrObject& a, const CorrObject& b) { return !(a == b); }

 private:
  VarietyPtr x_, y_;
  QMatrix p_;
  std::vector<QMatrix> gens_;
};

/// Non-unital evaluation k[Y] -> p M_n(k[X]) p with cached monomial powers.
class Evaluator {
 public:
  explicit Evaluator(const CorrObject& obj);
  Evaluator(const Evaluator&) = delete;
  ~Evaluator();

  QMatrix operator()(const QElem& f);
  QMatrix operator()(const Poly& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QMatrix eval_nonunital(const CorrObject& obj, const Poly& f);
QMatrix eval_nonunital(const CorrObject& obj, const std::string& f);

/// Validated construction; InvalidObject names the violated law.
CorrObject make_correspondence(const VarietyPtr& x, const VarietyPtr& y, const QMatrix& p,
                               const std::vector<QMatrix>& gens);
CorrObject zero_object(const VarietyPtr& x, const VarietyPtr& y);
/// sigma(f) for f: X -> Y.
CorrObject graph_object(const VarMorphism& f);
CorrObject identity_object(const VarietyPtr& x);
CorrObject direct_sum(const CorrObject& a, const CorrObject& b);

class CorrMorphism {
 public:
  CorrMorphism(CorrObject src, CorrObject dst, QMatrix mat);

  const CorrObject& src() const { return src_; }
  const CorrObject& dst() const { return dst_; }
  const QMatrix& mat() const { return mat_; }

  /// First violated invariant, or empty.
  std::string violation() const;

  friend bool operator==(const CorrMorphism& a, const CorrMorphism& b);
  friend bool operator!=(const CorrMorphism& a, const CorrMorphism& b) { return !(a == b); }

 private:
  CorrObject src_, dst_;
  QMatrix mat_;
};

CorrMorphism make_corr_morphism(const CorrObject& src, const CorrObject& dst, const QMatrix& mat);
CorrMorphism identity_morphism(const CorrObject& obj);
CorrMorphism zero_morphism(const CorrObject& src, const CorrObject& dst);
/// beta o alpha.
CorrMorphism compose_vertical(const CorrMorphism& beta, const CorrMorphism& alpha);
CorrMorphism operator+(const CorrMorphism& a, const CorrMorphism& b);
CorrMorphism operator*(const QElem& c, const CorrMorphism& a);

/// Biproduct structure maps of direct_sum(a, b); k is 0 or 1.
CorrMorphism sum_injection(const CorrObject& a, const CorrObject& b, int k);
CorrMorphism sum_projection(const CorrObject& a, const CorrObject& b, int k);

struct IsoCertificate {
  CorrMorphism fwd;
  CorrMorphism bwd;
};

bool verify_iso(const IsoCertificate& cert);

std::string to_string(const CorrObject& obj);

}  // namespace kcorr
