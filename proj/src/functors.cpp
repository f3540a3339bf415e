#include "kcorr/functors.hpp"

#include "kcorr/error.hpp"

namespace kcorr {

namespace {

void cross_check(const CorrObject& fast, const CorrObject& slow, const char* what) {
  if (fast != slow) fail(ErrorKind::InternalLawViolation, std::string(what) + ": substitution and graph composition disagree");
}

}  // namespace

CorrObject pullback_by_graph(const VarMorphism& f, const CorrObject& phi) {
  return compose_objects(graph_object(f), phi);
}

CorrObject pushforward_by_graph(const VarMorphism& g, const CorrObject& phi) {
  return compose_objects(phi, graph_object(g));
}

CorrObject pullback_obj(const VarMorphism& f, const CorrObject& phi) {
  require_same(f.target(), phi.X(), "pullback");
  std::vector<QMatrix> gens;
  for (const auto& a : phi.gens()) gens.push_back(f.pull(a));
  CorrObject out(f.source(), phi.Y(), f.pull(phi.p()), std::move(gens));
  if (debug_validation()) cross_check(out, pullback_by_graph(f, phi), "pullback");
  return out;
}

CorrMorphism pullback_mor(const VarMorphism& f, const CorrMorphism& alpha) {
  return CorrMorphism(pullback_obj(f, alpha.src()), pullback_obj(f, alpha.dst()), f.pull(alpha.mat()));
}

CorrObject pushforward_obj(const VarMorphism& g, const CorrObject& phi) {
  require_same(g.source(), phi.Y(), "pushforward");
  Evaluator ev(phi);
  std::vector<QMatrix> gens;
  for (const auto& q : g.images()) gens.push_back(ev(q));
  CorrObject out(phi.X(), g.target(), phi.p(), std::move(gens));
  if (debug_validation()) cross_check(out, pushforward_by_graph(g, phi), "pushforward");
  return out;
}

CorrMorphism pushforward_mor(const VarMorphism& g, const CorrMorphism& alpha) {
  return CorrMorphism(pushforward_obj(g, alpha.src()), pushforward_obj(g, alpha.dst()), alpha.mat());
}

CorrObject box_product(const VarMorphism& f, const CorrObject& phi) {
  if (f.source()->field() != phi.X()->field()) fail(ErrorKind::FieldMismatch, "box product over different fields");
  const VarMorphism qx = project_left(phi.X(), f.source());
  const VarMorphism qu = project_right(phi.X(), f.source());
  const QMatrix p = qx.pull(phi.p());
  std::vector<QMatrix> gens;
  for (const auto& a : phi.gens()) gens.push_back(qx.pull(a));
  for (const auto& img : f.images()) gens.push_back(scale(p, qu.pull(img)));
  CorrObject out(qx.source(), product(phi.Y(), f.target()), p, std::move(gens));
  if (debug_validation()) {
    const std::string v = out.violation();
    if (!v.empty()) fail(ErrorKind::InternalLawViolation, "box product: " + v);
  }
  return out;
}

CorrMorphism box_mor(const VarMorphism& f, const CorrMorphism& alpha) {
  const VarMorphism qx = project_left(alpha.src().X(), f.source());
  return CorrMorphism(box_product(f, alpha.src()), box_product(f, alpha.dst()), qx.pull(alpha.mat()));
}

std::string AutObject::violation() const {
  if (theta.size() != theta_inv.size()) return "arity: " + std::to_string(theta.size()) + " automorphisms but " +
                                                std::to_string(theta_inv.size()) + " inverses";
  const QMatrix& p = base.p();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (const auto* m : {&theta[i], &theta_inv[i]}) {
      if (m->src() != base || m->dst() != base) return "endomorphism: automorphism " + std::to_string(i + 1) + " is not an endomorphism of the base";
      const std::string v = m->violation();
      if (!v.empty()) return "automorphism " + std::to_string(i + 1) + ": " + v;
    }
    if (!equal(mul(theta[i].mat(), theta_inv[i].mat()), p) || !equal(mul(theta_inv[i].mat(), theta[i].mat()), p))
      return "inverse: theta_" + std::to_string(i + 1) + " and its inverse do not compose to the identity";
  }
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j)
      if (!equal(mul(theta[i].mat(), theta[j].mat()), mul(theta[j].mat(), theta[i].mat())))
        return "commuting: theta_" + std::to_string(i + 1) + " and theta_" + std::to_string(j + 1) + " do not commute";
  return {};
}

bool operator==(const AutObject& a, const AutObject& b) {
  if (a.base != b.base || a.theta.size() != b.theta.size() || a.theta_inv.size() != b.theta_inv.size()) return false;
  for (std::size_t i = 0; i < a.theta.size(); ++i)
    if (!equal(a.theta[i].mat(), b.theta[i].mat()) || !equal(a.theta_inv[i].mat(), b.theta_inv[i].mat())) return false;
  return true;
}

std::string AutMorphism::violation() const {
  if (underlying.src() != src.base || underlying.dst() != dst.base) return "ends: underlying morphism does not join the bases";
  if (src.arity() != dst.arity()) return "arity: automorphism counts differ";
  const std::string v = underlying.violation();
  if (!v.empty()) return v;
  for (std::size_t i = 0; i < src.arity(); ++i)
    if (!equal(mul(underlying.mat(), src.theta[i].mat()), mul(dst.theta[i].mat(), underlying.mat())))
      return "equivariance: alpha*theta_" + std::to_string(i + 1) + " != theta'_" + std::to_string(i + 1) + "*alpha";
  return {};
}

AutObject make_aut_object(const CorrObject& base, const std::vector<QMatrix>& theta,
                          const std::vector<QMatrix>& theta_inv) {
  AutObject a{base, {}, {}};
  for (const auto& m : theta) a.theta.emplace_back(base, base, m);
  for (const auto& m : theta_inv) a.theta_inv.emplace_back(base, base, m);
  const std::string v = a.violation();
  if (!v.empty()) fail(v.rfind("arity", 0) == 0 ? ErrorKind::ShapeError : ErrorKind::InvalidObject, v);
  return a;
}

AutMorphism make_aut_morphism(const AutObject& src, const AutObject& dst, const QMatrix& mat) {
  AutMorphism m{src, dst, CorrMorphism(src.base, dst.base, mat)};
  const std::string v = m.violation();
  if (!v.empty()) fail(ErrorKind::InvalidMorphism, v);
  return m;
}

int torus_arity(const VarietyPtr& target) {
  const auto& fs = target->factors();
  if (fs.empty() || fs.back().kind != Factor::Kind::Torus)
    fail(ErrorKind::ShapeError, "target '" + target->name() + "' is not of the form Y x G_m^n");
  return fs.back().torus_rank;
}

namespace {

VarietyPtr torus_base(const VarietyPtr& target) {
  return sub_product(target, 0, target->factors().size() - 1);
}

}  // namespace

AutObject rho(const CorrObject& phi) {
  const int n = torus_arity(phi.Y());
  const VarietyPtr y = torus_base(phi.Y());
  const std::size_t m = y->nvars();
  std::vector<QMatrix> gens(phi.gens().begin(), phi.gens().begin() + static_cast<std::ptrdiff_t>(m));
  AutObject a{CorrObject(phi.X(), y, phi.p(), std::move(gens)), {}, {}};
  for (int i = 0; i < n; ++i) {
    a.theta.emplace_back(a.base, a.base, phi.gen(m + 2 * i));
    a.theta_inv.emplace_back(a.base, a.base, phi.gen(m + 2 * i + 1));
  }
  if (debug_validation()) {
    const std::string v = a.violation();
    if (!v.empty()) fail(ErrorKind::InternalLawViolation, "rho: " + v);
  }
  return a;
}

AutMorphism rho(const CorrMorphism& alpha) {
  AutObject s = rho(alpha.src()), d = rho(alpha.dst());
  CorrMorphism u(s.base, d.base, alpha.mat());
  return AutMorphism{std::move(s), std::move(d), std::move(u)};
}

CorrObject rho_inverse(const AutObject& a, int n) {
  if (n <= 0 || static_cast<std::size_t>(n) != a.arity() || a.theta_inv.size() != a.arity())
    fail(ErrorKind::ShapeError, "expected " + std::to_string(n) + " automorphisms, found " + std::to_string(a.arity()));
  std::vector<QMatrix> gens = a.base.gens();
  for (int i = 0; i < n; ++i) {
    gens.push_back(a.theta[i].mat());
    gens.push_back(a.theta_inv[i].mat());
  }
  return CorrObject(a.base.X(), product(a.base.Y(), gm_power(n, a.base.X()->field())), a.base.p(), std::move(gens));
}

CorrMorphism rho_inverse(const AutMorphism& m, int n) {
  return CorrMorphism(rho_inverse(m.src, n), rho_inverse(m.dst, n), m.underlying.mat());
}

AutObject pullback_aut(const VarMorphism& f, const AutObject& a) {
  AutObject out{pullback_obj(f, a.base), {}, {}};
  for (const auto& t : a.theta) out.theta.emplace_back(out.base, out.base, f.pull(t.mat()));
  for (const auto& t : a.theta_inv) out.theta_inv.emplace_back(out.base, out.base, f.pull(t.mat()));
  return out;
}

AutObject pushforward_aut(const VarMorphism& g, const AutObject& a) {
  AutObject out{pushforward_obj(g, a.base), {}, {}};
  for (const auto& t : a.theta) out.theta.emplace_back(out.base, out.base, t.mat());
  for (const auto& t : a.theta_inv) out.theta_inv.emplace_back(out.base, out.base, t.mat());
  return out;
}

}  // namespace kcorr
