#include "kcorr/corrcat.hpp"

#include <atomic>

#include "kcorr/error.hpp"
#include "kcorr/exactalg/matrix.hpp"
#include "kcorr/exactalg/parse.hpp"

namespace kcorr {

namespace {
std::atomic<bool> g_debug{false};

QElem zero_of(const VarietyPtr& x) { return QElem::normal(x->coords(), Poly(x->ring())); }

std::string shape(const QMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }
}  // namespace

bool debug_validation() { return g_debug.load(std::memory_order_relaxed); }
void set_debug_validation(bool on) { g_debug.store(on, std::memory_order_relaxed); }

CorrObject::CorrObject(VarietyPtr x, VarietyPtr y, QMatrix p, std::vector<QMatrix> gens)
    : x_(std::move(x)), y_(std::move(y)), p_(bound_to(p, x_->coords())), gens_(std::move(gens)) {
  for (auto& a : gens_) a = bound_to(a, x_->coords());
}

std::string CorrObject::violation() const {
  if (p_.rows() != p_.cols()) return "shape: unit is " + shape(p_);
  if (gens_.size() != y_->nvars())
    return "arity: " + std::to_string(gens_.size()) + " generator images for " + std::to_string(y_->nvars()) +
           " coordinates of " + y_->name();
  for (std::size_t j = 0; j < gens_.size(); ++j)
    if (gens_[j].rows() != n() || gens_[j].cols() != n())
      return "shape: image of " + y_->vars()[j] + " is " + shape(gens_[j]);
  if (!equal(mul(p_, p_), p_)) return "idempotent: p*p != p";
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    if (!equal(mul(p_, gens_[j]), gens_[j]) || !equal(mul(gens_[j], p_), gens_[j]))
      return "corner: p*A != A or A*p != A for " + y_->vars()[j];
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!equal(mul(gens_[i], gens_[j]), mul(gens_[j], gens_[i])))
        return "commuting: images of " + y_->vars()[i] + " and " + y_->vars()[j] + " do not commute";
  Evaluator ev(*this);
  for (const auto& r : y_->gb().gens())
    if (!is_zero(ev(r))) return "relation: " + r.to_string() + " does not evaluate to 0";
  return {};
}

bool operator==(const CorrObject& a, const CorrObject& b) {
  if (a.n() != b.n() || a.gens_.size() != b.gens_.size()) return false;
  if (!same_variety(a.x_, b.x_) || !same_variety(a.y_, b.y_)) return false;
  if (!equal(a.p_, b.p_)) return false;
  for (std::size_t j = 0; j < a.gens_.size(); ++j)
    if (!equal(a.gens_[j], b.gens_[j])) return false;
  return true;
}

struct MatMul {
  QMatrix operator()(const QMatrix& a, const QMatrix& b) const { return mul(a, b); }
};

struct Evaluator::Impl {
  Impl(const CorrObject& obj) : y(obj.Y()), x(obj.X()), n(obj.n()), table(obj.gens(), obj.p(), MatMul{}) {}
  VarietyPtr y, x;
  Eigen::Index n;
  PowerTable<QMatrix, MatMul> table;
};

Evaluator::Evaluator(const CorrObject& obj) : impl_(std::make_unique<Impl>(obj)) {}
Evaluator::~Evaluator() = default;

QMatrix Evaluator::operator()(const QElem& f) { return (*this)(f.bound(impl_->y->coords()).rep()); }

QMatrix Evaluator::operator()(const Poly& f) {
  const Poly g = f.bound(impl_->y->ring());
  QMatrix acc = zeros(impl_->x->coords(), impl_->n, impl_->n);
  for (const auto& t : g.terms()) {
    const QMatrix& v = impl_->table.get(t.mono);
    // Scaling a normal form by a constant keeps it normal.
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      const Poly& e = v.data()[i].rep();
      if (!e.is_zero()) acc.data()[i] = QElem::normal(impl_->x->coords(), acc.data()[i].rep() + e.scaled(t.coeff));
    }
  }
  return acc;
}

QMatrix eval_nonunital(const CorrObject& obj, const Poly& f) {
  Evaluator ev(obj);
  return ev(f);
}

QMatrix eval_nonunital(const CorrObject& obj, const std::string& f) {
  return eval_nonunital(obj, parse_poly(f, obj.Y()->ring()));
}

CorrObject make_correspondence(const VarietyPtr& x, const VarietyPtr& y, const QMatrix& p,
                               const std::vector<QMatrix>& gens) {
  if (x->field() != y->field()) fail(ErrorKind::FieldMismatch, "correspondence between varieties over different fields");
  CorrObject obj(x, y, p, gens);
  const std::string v = obj.violation();
  if (!v.empty()) {
    if (v.rfind("shape", 0) == 0 || v.rfind("arity", 0) == 0) fail(ErrorKind::ShapeError, v);
    fail(ErrorKind::InvalidObject, v);
  }
  return obj;
}

CorrObject zero_object(const VarietyPtr& x, const VarietyPtr& y) {
  return CorrObject(x, y, QMatrix(0, 0), std::vector<QMatrix>(y->nvars(), QMatrix(0, 0)));
}

CorrObject graph_object(const VarMorphism& f) {
  const VarietyPtr& x = f.source();
  std::vector<QMatrix> gens;
  for (const auto& q : f.images()) gens.push_back(QMatrix::Constant(1, 1, q));
  return CorrObject(x, f.target(), identity(x->coords(), 1), std::move(gens));
}

CorrObject identity_object(const VarietyPtr& x) { return graph_object(identity_morphism(x)); }

CorrObject direct_sum(const CorrObject& a, const CorrObject& b) {
  require_same(a.X(), b.X(), "direct sum");
  require_same(a.Y(), b.Y(), "direct sum");
  const QElem z = zero_of(a.X());
  std::vector<QMatrix> gens;
  for (std::size_t j = 0; j < a.gens().size(); ++j) gens.push_back(block_diag<QElem>({a.gen(j), b.gen(j)}, z));
  return CorrObject(a.X(), a.Y(), block_diag<QElem>({a.p(), b.p()}, z), std::move(gens));
}

CorrMorphism::CorrMorphism(CorrObject src, CorrObject dst, QMatrix mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(bound_to(mat, src_.X()->coords())) {}

std::string CorrMorphism::violation() const {
  if (mat_.rows() != dst_.n() || mat_.cols() != src_.n())
    return "shape: matrix is " + shape(mat_) + ", expected " + std::to_string(dst_.n()) + "x" + std::to_string(src_.n());
  if (!equal(mul(dst_.p(), mat_, src_.p()), mat_)) return "corner: p_dst*m*p_src != m";
  for (std::size_t j = 0; j < src_.gens().size(); ++j)
    if (!equal(mul(mat_, src_.gen(j)), mul(dst_.gen(j), mat_)))
      return "intertwining: m*A != A'*m for " + src_.Y()->vars()[j];
  return {};
}

bool operator==(const CorrMorphism& a, const CorrMorphism& b) {
  return equal(a.mat_, b.mat_) && a.src_ == b.src_ && a.dst_ == b.dst_;
}

CorrMorphism make_corr_morphism(const CorrObject& src, const CorrObject& dst, const QMatrix& mat) {
  require_same(src.X(), dst.X(), "morphism");
  require_same(src.Y(), dst.Y(), "morphism");
  CorrMorphism m(src, dst, mat);
  const std::string v = m.violation();
  if (!v.empty()) fail(v.rfind("shape", 0) == 0 ? ErrorKind::ShapeError : ErrorKind::InvalidMorphism, v);
  return m;
}

CorrMorphism identity_morphism(const CorrObject& obj) { return CorrMorphism(obj, obj, obj.p()); }

CorrMorphism zero_morphism(const CorrObject& src, const CorrObject& dst) {
  return CorrMorphism(src, dst, zeros(src.X()->coords(), dst.n(), src.n()));
}

CorrMorphism compose_vertical(const CorrMorphism& beta, const CorrMorphism& alpha) {
  if (alpha.dst() != beta.src()) fail(ErrorKind::AmbientMismatch, "vertical composition: target of the first map is not the source of the second");
  CorrMorphism out(alpha.src(), beta.dst(), mul(beta.mat(), alpha.mat()));
  if (debug_validation()) {
    const std::string v = out.violation();
    if (!v.empty()) fail(ErrorKind::InternalLawViolation, "composite morphism: " + v);
  }
  return out;
}

CorrMorphism operator+(const CorrMorphism& a, const CorrMorphism& b) {
  if (a.src() != b.src() || a.dst() != b.dst()) fail(ErrorKind::AmbientMismatch, "sum of morphisms with different ends");
  return CorrMorphism(a.src(), a.dst(), a.mat() + b.mat());
}

CorrMorphism operator*(const QElem& c, const CorrMorphism& a) { return CorrMorphism(a.src(), a.dst(), scale(a.mat(), c)); }

CorrMorphism sum_injection(const CorrObject& a, const CorrObject& b, int k) {
  const CorrObject s = direct_sum(a, b);
  const CorrObject& part = k == 0 ? a : b;
  QMatrix m = zeros(a.X()->coords(), s.n(), part.n());
  m.block(k == 0 ? 0 : a.n(), 0, part.n(), part.n()) = part.p();
  return CorrMorphism(part, s, m);
}

CorrMorphism sum_projection(const CorrObject& a, const CorrObject& b, int k) {
  const CorrObject s = direct_sum(a, b);
  const CorrObject& part = k == 0 ? a : b;
  QMatrix m = zeros(a.X()->coords(), part.n(), s.n());
  m.block(0, k == 0 ? 0 : a.n(), part.n(), part.n()) = part.p();
  return CorrMorphism(s, part, m);
}

bool verify_iso(const IsoCertificate& cert) {
  if (cert.fwd.src() != cert.bwd.dst() || cert.fwd.dst() != cert.bwd.src()) return false;
  if (!cert.fwd.violation().empty() || !cert.bwd.violation().empty()) return false;
  return equal(mul(cert.bwd.mat(), cert.fwd.mat()), cert.fwd.src().p()) &&
         equal(mul(cert.fwd.mat(), cert.bwd.mat()), cert.fwd.dst().p());
}

std::string to_string(const CorrObject& obj) {
  std::string s = "n = " + std::to_string(obj.n()) + "; unit = " + to_string(obj.p());
  for (std::size_t j = 0; j < obj.gens().size(); ++j) s += "; gen " + obj.Y()->vars()[j] + " = " + to_string(obj.gen(j));
  return s;
}

}  // namespace kcorr
