#include "kcorr/exactalg/qelem.hpp"

#include <map>
#include <mutex>

#include "kcorr/error.hpp"

namespace kcorr {

bool same_coords(const CoordPtr& a, const CoordPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_ring(a->ring, b->ring) && a->gb == b->gb;
}

CoordPtr intern_coords(RingPtr ring, GroebnerBasis gb) {
  static std::mutex mu;
  static std::map<std::string, std::weak_ptr<const CoordinateRing>> table;
  std::string key = ring->field().to_string() + "|" + to_string(ring->order());
  for (const auto& v : ring->vars()) key += "|" + v;
  key += "||";
  for (const auto& g : gb.gens()) key += g.to_string() + ";";
  std::lock_guard lock(mu);
  auto& slot = table[key];
  if (auto hit = slot.lock()) return hit;
  auto fresh = std::make_shared<const CoordinateRing>(std::move(ring), std::move(gb));
  slot = fresh;
  return fresh;
}

QElem::QElem(CoordPtr ctx, const Poly& rep) : ctx_(std::move(ctx)) {
  rep_ = ctx_ ? ctx_->reduce(rep) : rep;
}

QElem QElem::normal(CoordPtr ctx, Poly rep) {
  QElem e;
  e.ctx_ = std::move(ctx);
  e.rep_ = std::move(rep);
  return e;
}

QElem QElem::constant(const CoordPtr& ctx, const Coeff& c) { return QElem(ctx, Poly::constant(ctx->ring, c)); }

QElem QElem::bound(const CoordPtr& ctx) const {
  if (!ctx || ctx_ == ctx) return *this;
  if (ctx_) {
    if (!same_coords(ctx_, ctx))
      fail(ctx_->ring->field() == ctx->ring->field() ? ErrorKind::AmbientMismatch : ErrorKind::FieldMismatch,
           "coordinate rings differ");
    return normal(ctx, rep_);
  }
  return QElem(ctx, rep_.bound(ctx->ring));
}

CoordPtr QElem::common(const QElem& a, const QElem& b) {
  if (!a.ctx_) return b.ctx_;
  if (!b.ctx_ || a.ctx_ == b.ctx_) return a.ctx_;
  if (!same_coords(a.ctx_, b.ctx_))
    fail(a.ctx_->ring->field() == b.ctx_->ring->field() ? ErrorKind::AmbientMismatch : ErrorKind::FieldMismatch,
         "coordinate rings differ");
  return a.ctx_;
}

QElem& QElem::operator+=(const QElem& o) {
  CoordPtr c = common(*this, o);
  if (!c) {
    rep_ += o.rep_;
    return *this;
  }
  *this = normal(c, bound(c).rep_ + o.bound(c).rep_);
  return *this;
}

QElem& QElem::operator-=(const QElem& o) {
  CoordPtr c = common(*this, o);
  if (!c) {
    rep_ -= o.rep_;
    return *this;
  }
  *this = normal(c, bound(c).rep_ - o.bound(c).rep_);
  return *this;
}

QElem& QElem::operator*=(const QElem& o) {
  CoordPtr c = common(*this, o);
  if (!c) {
    rep_ *= o.rep_;
    return *this;
  }
  const QElem a = bound(c), b = o.bound(c);
  // Normal forms are linear, so a constant factor needs no reduction.
  if (a.rep_.is_constant())
    *this = normal(c, b.rep_.scaled(a.rep_.constant_term()));
  else if (b.rep_.is_constant())
    *this = normal(c, a.rep_.scaled(b.rep_.constant_term()));
  else
    *this = QElem(c, a.rep_ * b.rep_);
  return *this;
}

QElem QElem::operator-() const { return normal(ctx_, -rep_); }

bool operator==(const QElem& a, const QElem& b) {
  CoordPtr c = QElem::common(a, b);
  if (!c) return a.rep_ == b.rep_;
  return a.bound(c).rep_ == b.bound(c).rep_;
}

CoordPtr context_of(const QMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.data()[i].ctx()) return m.data()[i].ctx();
  return nullptr;
}

QMatrix zeros(const CoordPtr& ctx, Eigen::Index rows, Eigen::Index cols) {
  return QMatrix::Constant(rows, cols, QElem::normal(ctx, Poly(ctx ? ctx->ring : nullptr)));
}

QMatrix identity(const CoordPtr& ctx, Eigen::Index n) {
  QMatrix m = zeros(ctx, n, n);
  const QElem one = ctx ? QElem::constant(ctx, Coeff::one(ctx->ring->field())) : QElem(1);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

QMatrix bound_to(const QMatrix& m, const CoordPtr& ctx) {
  return m.unaryExpr([&ctx](const QElem& e) { return e.bound(ctx); });
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorKind::ShapeError, "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  CoordPtr ctx = context_of(a);
  if (!ctx) ctx = context_of(b);
  if (!ctx) {
    QMatrix out = QMatrix::Constant(a.rows(), b.cols(), QElem(0));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
  }
  const QMatrix x = bound_to(a, ctx), y = bound_to(b, ctx);
  QMatrix out = zeros(ctx, a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Poly acc(ctx->ring);
      bool nonconst = false;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const Poly& l = x(i, k).rep();
        const Poly& r = y(k, j).rep();
        if (l.is_zero() || r.is_zero()) continue;
        if (!l.is_constant() && !r.is_constant()) nonconst = true;
        acc += l * r;
      }
      out(i, j) = nonconst ? QElem(ctx, acc) : QElem::normal(ctx, std::move(acc));
    }
  return out;
}

QMatrix mul(const QMatrix& a, const QMatrix& b, const QMatrix& c) { return mul(mul(a, b), c); }

QMatrix scale(const QMatrix& m, const QElem& c) {
  return m.unaryExpr([&c](const QElem& e) { return c * e; });
}

bool equal(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

bool is_zero(const QMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

std::string to_string(const QMatrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace kcorr
