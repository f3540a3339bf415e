#include "naive_groebner.hpp"

#include <algorithm>

namespace oracle {

namespace {

int deg(const Exps& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps minus(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

mpz_class mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace

bool greater(const Ring& r, const Exps& a, const Exps& b) {
  if (r.lex) return a > b;
  if (deg(a) != deg(b)) return deg(a) > deg(b);
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

mpq_class canon(const Ring& r, mpq_class c) {
  c.canonicalize();
  if (r.p == 0) return c;
  const mpz_class num = mod(c.get_num(), r.p), den = mod(c.get_den(), r.p);
  mpz_class d_inv;
  mpz_invert(d_inv.get_mpz_t(), den.get_mpz_t(), mpz_class(r.p).get_mpz_t());
  return mpq_class(mod(num * d_inv, r.p));
}

mpq_class inv(const Ring& r, const mpq_class& c) {
  if (r.p == 0) return 1 / c;
  mpz_class out;
  mpz_invert(out.get_mpz_t(), c.get_num().get_mpz_t(), mpz_class(r.p).get_mpz_t());
  return mpq_class(out);
}

Exps leading(const Ring& r, const OPoly& f) {
  Exps best = f.terms.begin()->first;
  for (const auto& [e, c] : f.terms)
    if (greater(r, e, best)) best = e;
  return best;
}

OPoly add(const Ring& r, const OPoly& a, const OPoly& b, const mpq_class& scale_b) {
  OPoly out = a;
  for (const auto& [e, c] : b.terms) {
    mpq_class v = canon(r, out.terms[e] + scale_b * c);
    if (v == 0) out.terms.erase(e);
    else out.terms[e] = v;
  }
  return out;
}

OPoly mul_term(const Ring& r, const OPoly& f, const Exps& m, const mpq_class& c) {
  OPoly out;
  for (const auto& [e, v] : f.terms) {
    Exps k(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) k[i] = e[i] + m[i];
    out.terms[k] = canon(r, v * c);
  }
  return out;
}

OPoly remainder(const Ring& r, OPoly f, const std::vector<OPoly>& divisors) {
  OPoly rem;
  while (!f.terms.empty()) {
    const Exps lt = leading(r, f);
    const mpq_class lc = f.terms.at(lt);
    bool divided = false;
    for (const auto& g : divisors) {
      const Exps lg = leading(r, g);
      if (!divides(lg, lt)) continue;
      f = add(r, f, mul_term(r, g, minus(lt, lg), lc * inv(r, g.terms.at(lg))), -1);
      divided = true;
      break;
    }
    if (!divided) {
      rem.terms[lt] = lc;
      f.terms.erase(lt);
    }
  }
  return rem;
}

std::vector<OPoly> reduced_basis(const Ring& r, std::vector<OPoly> gens) {
  std::vector<OPoly> g;
  for (auto& f : gens)
    if (!f.terms.empty()) g.push_back(f);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Exps a = leading(r, g[i]), b = leading(r, g[j]);
      Exps l(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) l[k] = std::max(a[k], b[k]);
      const OPoly s = add(r, mul_term(r, g[i], minus(l, a), inv(r, g[i].terms.at(a))),
                          mul_term(r, g[j], minus(l, b), inv(r, g[j].terms.at(b))), -1);
      const OPoly rem = remainder(r, s, g);
      if (!rem.terms.empty()) g.push_back(rem);  // new pairs are visited by the outer loop
    }
  // Minimize: drop generators whose leading monomial is divisible by another's.
  std::vector<OPoly> min;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool drop = false;
    const Exps li = leading(r, g[i]);
    for (std::size_t j = 0; j < g.size() && !drop; ++j) {
      if (i == j) continue;
      const Exps lj = leading(r, g[j]);
      drop = divides(lj, li) && (lj != li || j < i);
    }
    if (!drop) min.push_back(mul_term(r, g[i], Exps(r.nvars, 0), inv(r, g[i].terms.at(li))));
  }
  // Interreduce.
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<OPoly> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    const Exps li = leading(r, min[i]);
    OPoly tail = min[i];
    tail.terms.erase(li);
    OPoly red = remainder(r, tail, others);
    red.terms[li] = mpq_class(1);
    min[i] = red;
  }
  std::sort(min.begin(), min.end(), [&](const OPoly& a, const OPoly& b) { return greater(r, leading(r, b), leading(r, a)); });
  return min;
}

}  // namespace oracle
