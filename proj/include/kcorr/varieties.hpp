#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kcorr/exactalg/qelem.hpp"

namespace kcorr {

/// One presented factor of an affine variety.
struct Factor {
  enum class Kind { General, Torus };

  std::string name;
  std::vector<std::string> vars;
  /// Ideal generators as written, in the factor's own variable names.
  std::vector<std::string> ideal;
  Kind kind = Kind::General;
  /// Torus arity for Kind::Torus.
  int torus_rank = 0;
  bool integral = false;

  bool trivial() const { return vars.empty() && ideal.empty(); }
};

/// A presented affine variety: a flat list of factors whose variables are
/// qualified as "Factor.var" once there is more than one factor.
class AffVariety {
 public:
  AffVariety(std::string name, FieldTag field, std::vector<Factor> factors, MonomialOrder order);

  const std::string& name() const { return name_; }
  FieldTag field() const { return field_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const RingPtr& ring() const { return coords_->ring; }
  const GroebnerBasis& gb() const { return coords_->gb; }
  const CoordPtr& coords() const { return coords_; }
  const std::vector<std::string>& vars() const { return ring()->vars(); }
  std::size_t nvars() const { return vars().size(); }
  const std::vector<Poly>& ideal_gens() const { return ideal_; }
  /// Offset of factor i's variables in vars().
  std::size_t factor_offset(std::size_t i) const { return offsets_[i]; }
  /// The coordinate ring is a domain: zero ideal, or every factor asserted integral
  /// and there is only one non-free factor.
  bool integral() const;

  QElem var(std::size_t i) const { return QElem::normal(coords_, Poly::variable(ring(), i)); }
  QElem element(const Poly& f) const { return QElem(coords_, f.bound(ring())); }
  QElem constant(const Coeff& c) const { return QElem::constant(coords_, c); }
  QElem parse(const std::string& text) const;

  /// Data equality: field, variables and reduced basis. The name is ignored.
  friend bool operator==(const AffVariety& a, const AffVariety& b);

 private:
  std::string name_;
  FieldTag field_;
  std::vector<Factor> factors_;
  std::vector<std::size_t> offsets_;
  std::vector<Poly> ideal_;
  CoordPtr coords_;
};

using VarietyPtr = std::shared_ptr<const AffVariety>;

bool same_variety(const VarietyPtr& a, const VarietyPtr& b);
/// Throws AmbientMismatch (or FieldMismatch) unless same_variety.
void require_same(const VarietyPtr& a, const VarietyPtr& b, const std::string& what);

VarietyPtr make_variety(const std::string& name, const std::vector<std::string>& vars,
                        const std::vector<std::string>& ideal, FieldTag field, bool integral = false,
                        MonomialOrder order = MonomialOrder::DegRevLex);
VarietyPtr point(FieldTag field);
VarietyPtr product(const VarietyPtr& x, const VarietyPtr& y, const std::string& name = "");
/// Variety made of factors [first, last) of v.
VarietyPtr sub_product(const VarietyPtr& v, std::size_t first, std::size_t last, const std::string& name = "");
/// G_m^n = Spec k[t1,s1,...,tn,sn]/(t_i s_i - 1).
VarietyPtr gm_power(int n, FieldTag field);

/// A morphism X -> Y given by the pullback of each coordinate of Y.
class VarMorphism {
 public:
  VarMorphism(VarietyPtr source, VarietyPtr target, std::vector<QElem> images);

  const VarietyPtr& source() const { return src_; }
  const VarietyPtr& target() const { return dst_; }
  const std::vector<QElem>& images() const { return images_; }

  /// f^#: k[target] -> k[source].
  QElem pull(const QElem& q) const;
  Poly pull(const Poly& f) const { return pull(dst_->element(f)).rep(); }
  QMatrix pull(const QMatrix& m) const;

  friend bool operator==(const VarMorphism& a, const VarMorphism& b);

 private:
  VarietyPtr src_, dst_;
  std::vector<QElem> images_;
};

/// Validates that every relation of the target pulls back to zero.
VarMorphism make_morphism(const VarietyPtr& source, const VarietyPtr& target, std::vector<QElem> images);
VarMorphism make_morphism(const VarietyPtr& source, const VarietyPtr& target, const std::vector<std::string>& images);
VarMorphism identity_morphism(const VarietyPtr& x);
/// g o f.
VarMorphism compose(const VarMorphism& g, const VarMorphism& f);
/// f x g : X x U -> X' x U'.
VarMorphism product_morphism(const VarMorphism& f, const VarMorphism& g);
/// Projections from x * y onto x and y.
VarMorphism project_left(const VarietyPtr& x, const VarietyPtr& y);
VarMorphism project_right(const VarietyPtr& x, const VarietyPtr& y);
/// X -> pt.
VarMorphism to_point(const VarietyPtr& x);

}  // namespace kcorr
