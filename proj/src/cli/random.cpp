#include "kcorr/cli/random.hpp"

#include "kcorr/error.hpp"
#include "kcorr/exactalg/parse.hpp"

namespace kcorr {

std::vector<VarietyPtr> catalogue(FieldTag field) {
  return {point(field), make_variety("A1", {"x"}, {}, field), make_variety("TwoPts", {"y"}, {"y^2 - y"}, field),
          gm_power(1, field)};
}

Coeff random_coeff(Rng& rng, FieldTag field, bool nonzero) {
  for (;;) {
    Coeff c = Coeff::from_integer(field, rng.range(-2, 2));
    if (field.is_rational() && rng.chance(15)) c /= Coeff(2);
    if (!nonzero || !c.is_zero()) return c;
  }
}

QElem random_element(Rng& rng, const VarietyPtr& x, int degree) {
  Poly f = Poly::constant(x->ring(), random_coeff(rng, x->field()));
  if (degree >= 1)
    for (std::size_t i = 0; i < x->nvars(); ++i)
      if (rng.chance(50)) f += Poly::variable(x->ring(), i).scaled(random_coeff(rng, x->field(), true));
  if (degree >= 2 && x->nvars() > 0 && rng.chance(30)) {
    const auto i = rng.below(x->nvars()), j = rng.below(x->nvars());
    f += (Poly::variable(x->ring(), i) * Poly::variable(x->ring(), j)).scaled(random_coeff(rng, x->field(), true));
  }
  return x->element(f);
}

namespace {

// Units of k[X] that are not constants: torus coordinates of X.
std::vector<std::pair<QElem, QElem>> unit_monomials(const VarietyPtr& x) {
  std::vector<std::pair<QElem, QElem>> out{{x->constant(Coeff::one(x->field())), x->constant(Coeff::one(x->field()))}};
  for (std::size_t f = 0; f < x->factors().size(); ++f) {
    const Factor& fac = x->factors()[f];
    if (fac.kind != Factor::Kind::Torus) continue;
    for (int i = 0; i < fac.torus_rank; ++i) {
      const std::size_t t = x->factor_offset(f) + 2 * static_cast<std::size_t>(i);
      out.emplace_back(x->var(t), x->var(t + 1));
      out.emplace_back(x->var(t + 1), x->var(t));
    }
  }
  return out;
}

bool relations_hold(const Factor& fac, const std::vector<QElem>& images, const VarietyPtr& x) {
  RingPtr local = PolyRing::make(x->field(), fac.vars, x->ring()->order());
  auto m = [](const QElem& a, const QElem& b) { return a * b; };
  PowerTable<QElem, decltype(m)> table(images, x->constant(Coeff::one(x->field())), m);
  for (const auto& text : fac.ideal) {
    const Poly r = parse_poly(text, local);
    QElem acc = x->constant(Coeff::zero(x->field()));
    for (const auto& t : r.terms()) acc += x->constant(t.coeff) * table.get(t.mono);
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace

std::vector<QElem> random_point(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b) {
  std::vector<QElem> out;
  const FieldTag k = x->field();
  for (const auto& fac : y->factors()) {
    if (fac.ideal.empty()) {
      for (std::size_t i = 0; i < fac.vars.size(); ++i) out.push_back(random_element(rng, x, b.max_degree));
    } else if (fac.kind == Factor::Kind::Torus) {
      const auto units = unit_monomials(x);
      for (int i = 0; i < fac.torus_rank; ++i) {
        const Coeff c = random_coeff(rng, k, true);
        const auto& [u, uinv] = rng.pick(units);
        out.push_back(x->constant(c) * u);
        out.push_back(x->constant(c.inverse()) * uinv);
      }
    } else {
      std::vector<QElem> candidates;
      for (long c : {0L, 1L, -1L, 2L}) candidates.push_back(x->constant(Coeff::from_integer(k, c)));
      for (std::size_t i = 0; i < x->nvars(); ++i) {
        candidates.push_back(x->var(i));
        candidates.push_back(x->constant(Coeff::one(k)) - x->var(i));
      }
      bool ok = false;
      std::vector<QElem> images;
      for (int attempt = 0; attempt < b.resample_budget && !ok; ++attempt) {
        images.clear();
        for (std::size_t i = 0; i < fac.vars.size(); ++i) images.push_back(rng.pick(candidates));
        ok = relations_hold(fac, images, x);
      }
      if (!ok) fail(ErrorKind::GenerationFailed, "no point of '" + fac.name + "' found over '" + x->name() + "' within the resampling budget");
      out.insert(out.end(), images.begin(), images.end());
    }
  }
  return out;
}

VarMorphism random_morphism(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b) {
  return make_morphism(x, y, random_point(rng, x, y, b));
}

std::pair<QMatrix, QMatrix> random_unimodular(Rng& rng, const VarietyPtr& x, Eigen::Index n, const RandomBounds& b) {
  const CoordPtr& ctx = x->coords();
  QMatrix u = identity(ctx, n), uinv = identity(ctx, n);
  if (n < 2) {
    if (n == 1 && rng.chance(50)) {
      const Coeff c = random_coeff(rng, x->field(), true);
      u(0, 0) = x->constant(c);
      uinv(0, 0) = x->constant(c.inverse());
    }
    return {u, uinv};
  }
  const int count = rng.range(0, b.elementary);
  for (int e = 0; e < count; ++e) {
    const auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    const QElem f = random_element(rng, x, b.max_degree);
    QMatrix t = identity(ctx, n), tinv = identity(ctx, n);
    t(i, j) = f;
    tinv(i, j) = -f;
    u = mul(t, u);
    uinv = mul(uinv, tinv);
  }
  return {u, uinv};
}

CorrObject random_object(const VarietyPtr& x, const VarietyPtr& y, std::uint64_t seed, const RandomBounds& b) {
  Rng rng(seed);
  return random_object(rng, x, y, b);
}

CorrObject random_object(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b) {
  const CoordPtr& ctx = x->coords();
  const Eigen::Index n = rng.chance(8) ? 0 : rng.range(1, b.max_n);
  const Eigen::Index r = rng.range(0, static_cast<int>(n));
  std::vector<std::vector<QElem>> points;
  for (Eigen::Index k = 0; k < r; ++k) points.push_back(random_point(rng, x, y, b));
  const bool nilpotent = r >= 2 && rng.chance(30);
  if (nilpotent) points[1] = points[0];

  const auto [u, uinv] = random_unimodular(rng, x, n, b);
  QMatrix d = zeros(ctx, n, n);
  for (Eigen::Index k = 0; k < r; ++k) d(k, k) = x->constant(Coeff::one(x->field()));
  std::vector<QMatrix> gens;
  std::size_t j = 0;
  for (const auto& fac : y->factors())
    for (std::size_t v = 0; v < fac.vars.size(); ++v, ++j) {
      QMatrix a = zeros(ctx, n, n);
      for (Eigen::Index k = 0; k < r; ++k) a(k, k) = points[k][j];
      if (nilpotent && fac.ideal.empty()) a(0, 1) = random_element(rng, x, b.max_degree);
      gens.push_back(mul(u, a, uinv));
    }
  return make_correspondence(x, y, mul(u, d, uinv), gens);
}

CorrMorphism random_endomorphism(Rng& rng, const CorrObject& phi, const RandomBounds& b) {
  const QElem q = random_element(rng, phi.Y(), 1);
  const QElem c = random_element(rng, phi.X(), b.max_degree);
  return CorrMorphism(phi, phi, scale(eval_nonunital(phi, q.rep()), c));
}

IsoCertificate random_conjugate(Rng& rng, const CorrObject& phi, const RandomBounds& b) {
  const auto [u, uinv] = random_unimodular(rng, phi.X(), phi.n(), b);
  std::vector<QMatrix> gens;
  for (const auto& a : phi.gens()) gens.push_back(mul(u, a, uinv));
  const CorrObject copy(phi.X(), phi.Y(), mul(u, phi.p(), uinv), std::move(gens));
  return {CorrMorphism(phi, copy, mul(u, phi.p())), CorrMorphism(copy, phi, mul(phi.p(), uinv))};
}

CorrMorphism random_morphism_from(Rng& rng, const CorrObject& phi, const RandomBounds& b) {
  const IsoCertificate c = random_conjugate(rng, phi, b);
  const CorrMorphism e = random_endomorphism(rng, phi, b);
  return CorrMorphism(phi, c.fwd.dst(), mul(c.fwd.mat(), e.mat()));
}

AutObject random_aut_object(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, int n, const RandomBounds& b) {
  return rho(random_object(rng, x, product(y, gm_power(n, x->field())), b));
}

}  // namespace kcorr
