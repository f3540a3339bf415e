#include "kcorr/bimod.hpp"

#include "kcorr/error.hpp"

namespace kcorr {

namespace {

QMatrix x_action(const VarietyPtr& x, std::size_t i, const QMatrix& proj) { return scale(proj, x->var(i)); }

std::vector<QMatrix> x_actions_for(const VarietyPtr& x, const QMatrix& proj) {
  std::vector<QMatrix> out;
  for (std::size_t i = 0; i < x->nvars(); ++i) out.push_back(x_action(x, i, proj));
  return out;
}

bool all_equal(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

std::string BimodulePresentation::violation() const {
  if (!equal(mul(proj, proj), proj)) return "idempotent: proj is not idempotent";
  std::vector<const QMatrix*> acts;
  for (const auto& m : x_actions) acts.push_back(&m);
  for (const auto& m : y_actions) acts.push_back(&m);
  for (const auto* a : acts) {
    if (a->rows() != n() || a->cols() != n()) return "shape: action matrix has the wrong size";
    if (!equal(mul(proj, *a), *a) || !equal(mul(*a, proj), *a)) return "corner: action not fixed by proj";
  }
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = i + 1; j < acts.size(); ++j)
      if (!equal(mul(*acts[i], *acts[j]), mul(*acts[j], *acts[i]))) return "commuting: actions do not commute";
  const CorrObject probe(X, Y, proj, y_actions);
  Evaluator ev(probe);
  for (const auto& r : Y->gb().gens())
    if (!is_zero(ev(r))) return "relation: " + r.to_string() + " does not act by 0";
  return {};
}

bool operator==(const BimodulePresentation& a, const BimodulePresentation& b) {
  return same_variety(a.X, b.X) && same_variety(a.Y, b.Y) && equal(a.proj, b.proj) && all_equal(a.x_actions, b.x_actions) &&
         all_equal(a.y_actions, b.y_actions);
}

BimodulePresentation to_bimodule(const CorrObject& phi) {
  return {phi.X(), phi.Y(), phi.p(), x_actions_for(phi.X(), phi.p()), phi.gens()};
}

CorrObject from_bimodule(const BimodulePresentation& m) {
  for (std::size_t i = 0; i < m.x_actions.size(); ++i)
    if (i >= m.X->nvars() || !equal(m.x_actions[i], x_action(m.X, i, m.proj)))
      fail(ErrorKind::InvalidObject, "x-action is not the scalar action of the base coordinates");
  return make_correspondence(m.X, m.Y, m.proj, m.y_actions);
}

bool bimodule_hom_valid(const BimodulePresentation& P, const BimodulePresentation& Q, const QMatrix& mat) {
  if (mat.rows() != Q.n() || mat.cols() != P.n())
    fail(ErrorKind::ShapeError, "candidate is " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                                    ", expected " + std::to_string(Q.n()) + "x" + std::to_string(P.n()));
  if (!same_variety(P.X, Q.X) || !same_variety(P.Y, Q.Y)) fail(ErrorKind::AmbientMismatch, "bimodules over different ambients");
  const CoordPtr& ctx = P.X->coords();
  const QMatrix m = bound_to(mat, ctx);
  // Kills the complement of im(P) and lands in im(Q).
  if (!is_zero(mul(identity(ctx, Q.n()) - Q.proj, m))) return false;
  if (!is_zero(mul(m, identity(ctx, P.n()) - P.proj))) return false;
  for (std::size_t i = 0; i < P.x_actions.size(); ++i)
    if (!equal(mul(m, P.x_actions[i]), mul(Q.x_actions[i], m))) return false;
  for (std::size_t j = 0; j < P.y_actions.size(); ++j)
    if (!equal(mul(m, P.y_actions[j]), mul(Q.y_actions[j], m))) return false;
  return true;
}

BimodulePresentation pullback_presentation(const VarMorphism& g, const BimodulePresentation& m) {
  require_same(g.target(), m.X, "bimodule pullback");
  BimodulePresentation out{g.source(), m.Y, g.pull(m.proj), {}, {}};
  out.x_actions = x_actions_for(out.X, out.proj);
  for (const auto& a : m.y_actions) out.y_actions.push_back(g.pull(a));
  return out;
}

BimodulePresentation pushforward_presentation(const VarMorphism& h, const BimodulePresentation& m) {
  require_same(h.source(), m.Y, "bimodule pushforward");
  const CorrObject probe(m.X, m.Y, m.proj, m.y_actions);
  Evaluator ev(probe);
  BimodulePresentation out{m.X, h.target(), m.proj, m.x_actions, {}};
  for (const auto& q : h.images()) out.y_actions.push_back(ev(q));
  return out;
}

std::string morphism_key(const VarMorphism& f) {
  std::string key = f.source()->field().to_string();
  for (const auto& v : f.source()->vars()) key += "," + v;
  key += "|";
  for (const auto& g : f.source()->gb().gens()) key += g.to_string() + ";";
  key += "|";
  for (const auto& v : f.target()->vars()) key += "," + v;
  key += "|";
  for (const auto& q : f.images()) key += q.to_string() + ";";
  return key;
}

std::size_t BigBimodule::cache_size() const {
  std::lock_guard lock(family_->mu);
  return family_->cache.size();
}

const BimodulePresentation* BigBimodule::cached(const VarMorphism& g) const {
  const std::string key = morphism_key(compose(structure_, g));
  std::lock_guard lock(family_->mu);
  auto it = family_->cache.find(key);
  return it == family_->cache.end() ? nullptr : &it->second;
}

BimodulePresentation BigBimodule::along(const VarMorphism& g) const {
  const VarMorphism total = compose(structure_, g);
  const std::string key = morphism_key(total);
  {
    std::lock_guard lock(family_->mu);
    if (auto it = family_->cache.find(key); it != family_->cache.end()) return it->second;
  }
  BimodulePresentation value = pullback_presentation(total, family_->origin);
  std::lock_guard lock(family_->mu);
  return family_->cache.emplace(key, std::move(value)).first->second;
}

BigBimodule big_lift(const CorrObject& phi) {
  auto family = std::make_shared<BigBimodule::Family>();
  family->origin = to_bimodule(phi);
  BimodulePresentation base = family->origin;
  return BigBimodule(std::move(family), identity_morphism(phi.X()), std::move(base));
}

BigBimodule big_pullback(const VarMorphism& g, const BigBimodule& m) {
  BimodulePresentation value = m.along(g);
  return BigBimodule(m.family_, compose(m.structure_, g), std::move(value));
}

BigBimodule big_pushforward(const VarMorphism& h, const BigBimodule& m) {
  auto family = std::make_shared<BigBimodule::Family>();
  family->origin = pushforward_presentation(h, m.origin());
  return BigBimodule(std::move(family), m.structure_, pushforward_presentation(h, m.base_));
}

BimodulePresentation restrict_R(const BigBimodule& m) { return m.base(); }

}  // namespace kcorr
