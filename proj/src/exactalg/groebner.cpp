#include "kcorr/exactalg/groebner.hpp"

#include <algorithm>
#include <numeric>

#include "kcorr/error.hpp"

namespace kcorr {

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return PolyRing::make(ring->field(), ring->vars(), order);
}

namespace {

// Bring g into ring, accepting a ring that differs only in the order.
Poly rebind(const Poly& g, const RingPtr& ring) {
  if (!g.ring() || same_ring(g.ring(), ring)) return g.bound(ring);
  if (g.ring()->field() != ring->field()) fail(ErrorKind::FieldMismatch, "generator over " + g.ring()->field().to_string());
  if (g.ring()->vars() != ring->vars()) fail(ErrorKind::AmbientMismatch, "generator from a different variable list");
  std::vector<std::size_t> ident(ring->nvars());
  std::iota(ident.begin(), ident.end(), 0);
  return g.remapped(ring, ident);
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Monomial l = f.leading().mono.lcm(g.leading().mono);
  const Coeff one = Coeff::one(f.ring()->field());
  Poly a = Poly::term(f.ring(), l.quotient(f.leading().mono), one) * f;
  return a.minus_term_times(one, l.quotient(g.leading().mono), g);
}

}  // namespace

Poly reduce(const Poly& f, const std::vector<Poly>& divisors) {
  if (divisors.empty() || f.is_zero()) return f;
  const RingPtr ring = f.ring() ? f.ring() : divisors.front().ring();
  Poly p = f.bound(ring);
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term& lt = p.leading();
    const Poly* hit = nullptr;
    for (const auto& g : divisors)
      if (g.leading().mono.divides(lt.mono)) {
        hit = &g;
        break;
      }
    if (hit) {
      const Coeff c = lt.coeff / hit->leading().coeff;
      p = p.minus_term_times(c, lt.mono.quotient(hit->leading().mono), *hit);
    } else {
      rem.push_back(lt);
      p = p.tail();
    }
  }
  return Poly::from_terms(ring, std::move(rem));
}

Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  if (f.ring() && !same_ring(f.ring(), G.ring()))
    fail(f.ring()->field() == G.ring()->field() ? ErrorKind::AmbientMismatch : ErrorKind::FieldMismatch,
         "polynomial and basis live in different rings");
  if (G.is_zero_ideal()) return f.bound(G.ring());
  if (G.is_unit_ideal()) return Poly(G.ring());
  return reduce(f.bound(G.ring()), G.gens());
}

bool quotient_eq(const Poly& f, const Poly& g, const GroebnerBasis& G) { return normal_form(f - g, G).is_zero(); }

GroebnerBasis buchberger(const std::vector<Poly>& gens, MonomialOrder order) {
  RingPtr ring;
  for (const auto& g : gens)
    if (g.ring()) {
      ring = g.ring();
      break;
    }
  if (!ring) fail(ErrorKind::AmbientMismatch, "cannot infer an ambient ring from constant generators");
  return buchberger(with_order(ring, order), gens);
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Poly>& gens) {
  GroebnerBasis out(ring);
  const MonomialOrder order = ring->order();
  std::vector<Poly> G;
  for (const auto& g : gens) {
    Poly h = rebind(g, ring);
    if (h.is_zero()) continue;
    if (h.is_constant()) {
      out.gens_ = {Poly::constant(ring, Coeff::one(ring->field()))};
      return out;
    }
    G.push_back(h.monic());
  }
  if (G.empty()) return out;

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial& a = G[i].leading().mono;
      const Monomial& b = G[j].leading().mono;
      if (a.coprime(b)) continue;
      pairs.push_back({i, j, a.lcm(b)});
    }
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto best = std::min_element(pairs.begin(), pairs.end(), [order](const Pair& a, const Pair& b) {
      return compare(a.lcm, b.lcm, order) < 0;
    });
    const Pair pr = *best;
    pairs.erase(best);
    Poly s = reduce(s_polynomial(G[pr.i], G[pr.j]), G);
    if (s.is_zero()) continue;
    if (s.is_constant()) {
      out.gens_ = {Poly::constant(ring, Coeff::one(ring->field()))};
      return out;
    }
    G.push_back(s.monic());
    add_pairs(G.size() - 1);
  }

  // Minimize: drop generators whose leading monomial is a multiple of another's.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].leading().mono;
      const Monomial& b = G[i].leading().mono;
      if (a.divides(b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // Interreduce.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = reduce(minimal[i], others).monic();
  }
  std::sort(minimal.begin(), minimal.end(), [order](const Poly& a, const Poly& b) {
    return compare(a.leading().mono, b.leading().mono, order) < 0;
  });
  out.gens_ = std::move(minimal);
  return out;
}

}  // namespace kcorr
