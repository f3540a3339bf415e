#include "kcorr/varieties.hpp"

#include <map>
#include <numeric>

#include "kcorr/error.hpp"
#include "kcorr/exactalg/parse.hpp"

namespace kcorr {

namespace {

std::vector<std::string> qualified_vars(const std::vector<Factor>& factors) {
  std::vector<std::string> out;
  if (factors.size() == 1) return factors[0].vars;
  std::map<std::string, int> seen;
  for (const auto& f : factors) {
    const int k = ++seen[f.name];
    const std::string prefix = k == 1 ? f.name : f.name + "#" + std::to_string(k);
    for (const auto& v : f.vars) out.push_back(prefix + "." + v);
  }
  return out;
}

}  // namespace

AffVariety::AffVariety(std::string name, FieldTag field, std::vector<Factor> factors, MonomialOrder order)
    : name_(std::move(name)), field_(field), factors_(std::move(factors)) {
  RingPtr ring = PolyRing::make(field_, qualified_vars(factors_), order);
  std::size_t offset = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(offset);
    RingPtr local = PolyRing::make(field_, f.vars, order);
    std::vector<std::size_t> map(f.vars.size());
    std::iota(map.begin(), map.end(), offset);
    for (const auto& text : f.ideal) ideal_.push_back(parse_poly(text, local).remapped(ring, map));
    offset += f.vars.size();
  }
  GroebnerBasis gb = buchberger(ring, ideal_);
  coords_ = intern_coords(ring, std::move(gb));
  std::vector<std::size_t> ident(ring->nvars());
  std::iota(ident.begin(), ident.end(), 0);
  for (auto& g : ideal_) g = g.remapped(coords_->ring, ident);
}

bool AffVariety::integral() const {
  if (gb().is_zero_ideal()) return true;
  if (gb().is_unit_ideal()) return false;
  int constrained = 0;
  for (const auto& f : factors_) {
    if (f.ideal.empty() || f.kind == Factor::Kind::Torus) continue;
    if (!f.integral) return false;
    ++constrained;
  }
  return constrained <= 1;
}

QElem AffVariety::parse(const std::string& text) const { return QElem(coords_, parse_poly(text, ring())); }

bool operator==(const AffVariety& a, const AffVariety& b) {
  if (a.coords_ == b.coords_) return true;
  return a.field_ == b.field_ && a.vars() == b.vars() && a.gb() == b.gb();
}

bool same_variety(const VarietyPtr& a, const VarietyPtr& b) { return a == b || (a && b && *a == *b); }

void require_same(const VarietyPtr& a, const VarietyPtr& b, const std::string& what) {
  if (same_variety(a, b)) return;
  if (a->field() != b->field())
    fail(ErrorKind::FieldMismatch, what + ": " + a->field().to_string() + " vs " + b->field().to_string());
  fail(ErrorKind::AmbientMismatch, what + ": '" + a->name() + "' differs from '" + b->name() + "'");
}

VarietyPtr make_variety(const std::string& name, const std::vector<std::string>& vars,
                        const std::vector<std::string>& ideal, FieldTag field, bool integral, MonomialOrder order) {
  Factor f;
  f.name = name;
  f.vars = vars;
  f.integral = integral;
  // Validate the generators now so stray variables surface as UnknownVariable.
  RingPtr local = PolyRing::make(field, vars, order);
  for (const auto& text : ideal) {
    Poly g = parse_poly(text, local);
    if (!g.is_zero()) f.ideal.push_back(g.to_string());
  }
  std::vector<Factor> factors;
  if (!f.trivial()) factors.push_back(std::move(f));
  return std::make_shared<const AffVariety>(name, field, std::move(factors), order);
}

VarietyPtr point(FieldTag field) { return make_variety("pt", {}, {}, field); }

VarietyPtr product(const VarietyPtr& x, const VarietyPtr& y, const std::string& name) {
  if (x->field() != y->field())
    fail(ErrorKind::FieldMismatch, "product of varieties over " + x->field().to_string() + " and " + y->field().to_string());
  std::vector<Factor> factors = x->factors();
  factors.insert(factors.end(), y->factors().begin(), y->factors().end());
  return std::make_shared<const AffVariety>(name.empty() ? x->name() + "*" + y->name() : name, x->field(),
                                            std::move(factors), x->ring()->order());
}

VarietyPtr sub_product(const VarietyPtr& v, std::size_t first, std::size_t last, const std::string& name) {
  std::vector<Factor> factors(v->factors().begin() + static_cast<std::ptrdiff_t>(first),
                              v->factors().begin() + static_cast<std::ptrdiff_t>(last));
  std::string n = name;
  if (n.empty()) {
    for (const auto& f : factors) n += (n.empty() ? "" : "*") + f.name;
    if (n.empty()) n = "pt";
  }
  return std::make_shared<const AffVariety>(n, v->field(), std::move(factors), v->ring()->order());
}

VarietyPtr gm_power(int n, FieldTag field) {
  if (n <= 0) fail(ErrorKind::InvalidArity, "torus arity must be positive, got " + std::to_string(n));
  Factor f;
  f.name = "Gm";
  f.kind = Factor::Kind::Torus;
  f.torus_rank = n;
  f.integral = true;
  for (int i = 1; i <= n; ++i) {
    const std::string t = "t" + std::to_string(i), s = "s" + std::to_string(i);
    f.vars.push_back(t);
    f.vars.push_back(s);
    f.ideal.push_back(t + "*" + s + " - 1");
  }
  return std::make_shared<const AffVariety>(n == 1 ? "Gm" : "Gm^" + std::to_string(n), field, std::vector<Factor>{f},
                                            MonomialOrder::DegRevLex);
}

VarMorphism::VarMorphism(VarietyPtr source, VarietyPtr target, std::vector<QElem> images)
    : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {}

namespace {

auto qmul = [](const QElem& a, const QElem& b) { return a * b; };
using QTable = PowerTable<QElem, decltype(qmul)>;

QElem pull_with(QTable& table, const VarietyPtr& src, const VarietyPtr& dst, const QElem& q) {
  const QElem e = q.bound(dst->coords());
  if (e.rep().is_constant()) return src->constant(e.rep().constant_term());
  // Accumulate unreduced, then reduce once.
  Poly acc(src->ring());
  for (const auto& t : e.rep().terms()) acc += table.get(t.mono).rep().scaled(t.coeff);
  return src->element(acc);
}

}  // namespace

QElem VarMorphism::pull(const QElem& q) const {
  QTable table(images_, src_->constant(Coeff::one(src_->field())), qmul);
  return pull_with(table, src_, dst_, q);
}

QMatrix VarMorphism::pull(const QMatrix& m) const {
  QTable table(images_, src_->constant(Coeff::one(src_->field())), qmul);
  return m.unaryExpr([&](const QElem& e) { return pull_with(table, src_, dst_, e); });
}

bool operator==(const VarMorphism& a, const VarMorphism& b) {
  return same_variety(a.src_, b.src_) && same_variety(a.dst_, b.dst_) && a.images_ == b.images_;
}

VarMorphism make_morphism(const VarietyPtr& source, const VarietyPtr& target, std::vector<QElem> images) {
  if (images.size() != target->nvars())
    fail(ErrorKind::InvalidArity, "morphism into '" + target->name() + "' needs " + std::to_string(target->nvars()) +
                                      " images, got " + std::to_string(images.size()));
  if (source->field() != target->field()) fail(ErrorKind::FieldMismatch, "morphism between varieties over different fields");
  for (auto& q : images) q = q.bound(source->coords());
  VarMorphism f(source, target, std::move(images));
  for (const auto& r : target->gb().gens()) {
    if (!f.pull(QElem::normal(target->coords(), r)).is_zero())
      fail(ErrorKind::NotWellDefined, "relation " + r.to_string() + " of '" + target->name() +
                                          "' does not vanish on '" + source->name() + "'");
  }
  return f;
}

VarMorphism make_morphism(const VarietyPtr& source, const VarietyPtr& target, const std::vector<std::string>& images) {
  std::vector<QElem> q;
  for (const auto& text : images) q.push_back(source->parse(text));
  return make_morphism(source, target, std::move(q));
}

VarMorphism identity_morphism(const VarietyPtr& x) {
  std::vector<QElem> images;
  for (std::size_t i = 0; i < x->nvars(); ++i) images.push_back(x->var(i));
  return VarMorphism(x, x, std::move(images));
}

VarMorphism compose(const VarMorphism& g, const VarMorphism& f) {
  require_same(f.target(), g.source(), "composing variety morphisms");
  std::vector<QElem> images;
  for (const auto& q : g.images()) images.push_back(f.pull(q));
  return VarMorphism(f.source(), g.target(), std::move(images));
}

namespace {

// Pull back along the inclusion of the coordinates of v into those of w at offset.
QElem embed(const QElem& q, const VarietyPtr& v, const VarietyPtr& w, std::size_t offset) {
  std::vector<std::size_t> map(v->nvars());
  std::iota(map.begin(), map.end(), offset);
  return w->element(q.bound(v->coords()).rep().remapped(w->ring(), map));
}

}  // namespace

VarMorphism product_morphism(const VarMorphism& f, const VarMorphism& g) {
  VarietyPtr src = product(f.source(), g.source());
  VarietyPtr dst = product(f.target(), g.target());
  std::vector<QElem> images;
  for (const auto& q : f.images()) images.push_back(embed(q, f.source(), src, 0));
  for (const auto& q : g.images()) images.push_back(embed(q, g.source(), src, f.source()->nvars()));
  return VarMorphism(src, dst, std::move(images));
}

VarMorphism project_left(const VarietyPtr& x, const VarietyPtr& y) {
  VarietyPtr xy = product(x, y);
  std::vector<QElem> images;
  for (std::size_t i = 0; i < x->nvars(); ++i) images.push_back(xy->var(i));
  return VarMorphism(xy, x, std::move(images));
}

VarMorphism project_right(const VarietyPtr& x, const VarietyPtr& y) {
  VarietyPtr xy = product(x, y);
  std::vector<QElem> images;
  for (std::size_t i = 0; i < y->nvars(); ++i) images.push_back(xy->var(x->nvars() + i));
  return VarMorphism(xy, y, std::move(images));
}

VarMorphism to_point(const VarietyPtr& x) { return VarMorphism(x, point(x->field()), {}); }

}  // namespace kcorr
