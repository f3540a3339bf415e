#pragma once

#include <memory>
#include <string>

#include <Eigen/Core>

#include "kcorr/exactalg/groebner.hpp"

namespace kcorr {

/// k[v_1..v_r]/I presented by a reduced basis of I.
struct CoordinateRing {
  CoordinateRing(RingPtr r, GroebnerBasis g) : ring(std::move(r)), gb(std::move(g)) {}
  RingPtr ring;
  GroebnerBasis gb;

  Poly reduce(const Poly& f) const { return normal_form(f, gb); }
};

using CoordPtr = std::shared_ptr<const CoordinateRing>;

bool same_coords(const CoordPtr& a, const CoordPtr& b);

/// Shared instance for a given ring and basis, so that equal coordinate rings
/// are usually pointer-equal.
CoordPtr intern_coords(RingPtr ring, GroebnerBasis gb);

/// An element of a coordinate ring stored as its normal form.
///
/// A null context marks an unbound integer literal; Eigen builds Scalar(0) and
/// Scalar(1) this way, and literals adopt the context of the other operand.
class QElem {
 public:
  QElem() = default;
  QElem(long c) : rep_(c) {}  // NOLINT
  QElem(int c) : rep_(static_cast<long>(c)) {}  // NOLINT
  /// Reduces rep into normal form.
  QElem(CoordPtr ctx, const Poly& rep);

  /// rep must already be in normal form.
  static QElem normal(CoordPtr ctx, Poly rep);
  static QElem constant(const CoordPtr& ctx, const Coeff& c);

  const CoordPtr& ctx() const { return ctx_; }
  const Poly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_literal() const { return !ctx_; }
  /// Bind a literal into ctx (no-op when already bound to it).
  QElem bound(const CoordPtr& ctx) const;

  QElem& operator+=(const QElem& o);
  QElem& operator-=(const QElem& o);
  QElem& operator*=(const QElem& o);
  QElem operator-() const;
  friend QElem operator+(QElem a, const QElem& b) { return a += b; }
  friend QElem operator-(QElem a, const QElem& b) { return a -= b; }
  friend QElem operator*(QElem a, const QElem& b) { return a *= b; }
  friend bool operator==(const QElem& a, const QElem& b);
  friend bool operator!=(const QElem& a, const QElem& b) { return !(a == b); }

  std::string to_string() const { return rep_.to_string(); }

 private:
  static CoordPtr common(const QElem& a, const QElem& b);
  CoordPtr ctx_;
  Poly rep_;
};

}  // namespace kcorr

namespace Eigen {
template <>
struct NumTraits<kcorr::QElem> : GenericNumTraits<kcorr::QElem> {
  using Real = kcorr::QElem;
  using NonInteger = kcorr::QElem;
  using Nested = kcorr::QElem;
  using Literal = kcorr::QElem;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 16,
  };
};
}  // namespace Eigen

namespace kcorr {

using QMatrix = Eigen::Matrix<QElem, Eigen::Dynamic, Eigen::Dynamic>;

/// Context of the first bound entry, or null for an all-literal matrix.
CoordPtr context_of(const QMatrix& m);

QMatrix zeros(const CoordPtr& ctx, Eigen::Index rows, Eigen::Index cols);
QMatrix identity(const CoordPtr& ctx, Eigen::Index n);
QMatrix bound_to(const QMatrix& m, const CoordPtr& ctx);

/// Exact product: each entry is accumulated unreduced and reduced once.
QMatrix mul(const QMatrix& a, const QMatrix& b);
QMatrix mul(const QMatrix& a, const QMatrix& b, const QMatrix& c);
QMatrix scale(const QMatrix& m, const QElem& c);

/// Entrywise normal-form equality; shapes must agree.
bool equal(const QMatrix& a, const QMatrix& b);
bool is_zero(const QMatrix& m);

/// "[[a, b], [c, d]]".
std::string to_string(const QMatrix& m);

}  // namespace kcorr
