// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kcorr/bimod.hpp"
#include "kcorr/cli/laws.hpp"
#include "kcorr/error.hpp"
#include "kcorr/exactalg/groebner.hpp"
#include "kcorr/k0.hpp"
#include "oracles/bridge.hpp"
#include "oracles/golden.hpp"

using namespace kcorr;

namespace {

const std::vector<FieldTag> kFields{FieldTag::prime(5), FieldTag::rational()};

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Every case of the given families, `cases` per field, must hold.
Outcome families(const std::vector<std::string>& laws, int cases, std::uint64_t seed) {
  Outcome out;
  int run = 0;
  for (const auto& law : laws)
    for (FieldTag k : kFields)
      for (int i = 0; i < cases; ++i, ++run)
        if (auto f = run_law_case(law, k, seed, i)) out.fail(law + " [" + k.to_string() + "] case " + std::to_string(i) + ": " + f->message);
  if (out.ok) out.detail = std::to_string(run) + " cases";
  return out;
}

Outcome law_suite_green() {
  LawOptions opts;
  opts.seed = 42;
  opts.cases = 200;
  const LawReport r = law_suite(opts);
  Outcome out;
  if (r.tallies.size() != law_names().size() * opts.fields.size()) out.fail("missing law families");
  if (!r.ok()) out.fail(std::to_string(r.failures.size()) + " failures, first: " + r.failures[0].law + ": " + r.failures[0].message);
  if (r.seconds >= 60) out.fail("wall time " + std::to_string(r.seconds) + "s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
  if (out.ok) out.detail = std::to_string(r.tallies.size()) + " tallies, zero failures, " + buf;
  return out;
}

oracle::Dense dense(const QMatrix& m, FieldTag k) { return oracle::from_matrix(m, k.characteristic()); }

long oracle_rank(const CorrObject& phi) { return oracle::rank(dense(phi.p(), phi.X()->field())); }

// Candidate matrices: valid morphisms, k[X]-multiples of them, and corrupted ones.
Outcome affine_comparison() {
  Outcome out;
  int valid = 0, invalid = 0;
  for (int i = 0; i < 300; ++i) {
    const FieldTag k = kFields[i % 2];
    Rng rng(1000 + i);
    const auto cat = catalogue(k);
    const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
    const CorrObject phi = random_object(rng, x, y);
    const CorrMorphism a = random_morphism_from(rng, phi);
    QMatrix m = a.mat();
    switch (i % 3) {
      case 0:
        break;
      case 1:
        m = m.unaryExpr([&](const QElem& e) { return e * random_element(rng, x, 1); });
        break;
      default:
        if (m.size() == 0) break;
        const Eigen::Index r = rng.range(0, static_cast<int>(m.rows()) - 1), c = rng.range(0, static_cast<int>(m.cols()) - 1);
        m(r, c) = m(r, c) + random_element(rng, x, 1);
        break;
    }
    const bool corr = CorrMorphism(a.src(), a.dst(), m).violation().empty();
    const bool bim = bimodule_hom_valid(to_bimodule(a.src()), to_bimodule(a.dst()), m);
    if (corr != bim) out.fail("predicates disagree on candidate " + std::to_string(i));
    (corr ? valid : invalid)++;
  }
  if (valid == 0 || invalid == 0) out.fail("only one outcome present");
  if (out.ok) out.detail = std::to_string(valid) + " valid, " + std::to_string(invalid) + " invalid, all agree";
  return out;
}

Outcome k0_of_point() {
  Outcome out;
  RandomBounds b;
  b.max_n = 3;
  std::string detail;
  for (FieldTag k : kFields) {
    const VarietyPtr pt = point(k);
    Rng rng(k.characteristic() + 17);
    K0Ledger ledger(pt, pt);
    for (int i = 0; i < 50; ++i) ledger.add(random_object(rng, pt, pt, b));
    const std::size_t n = ledger.size();
    for (ObjectId i = 0; i < n; ++i)
      for (ObjectId j = i + 1; j < n; ++j) {
        if (ledger.representative(i) == ledger.representative(j)) continue;
        if (auto cert = find_pt_isomorphism(ledger.object(i), ledger.object(j))) ledger.register_iso(*cert);
      }
    std::map<long, std::vector<ObjectId>> fibers;
    for (ObjectId i = 0; i < n; ++i) fibers[oracle_rank(ledger.object(i))].push_back(i);
    std::vector<std::vector<ObjectId>> expect;
    for (auto& [r, ids] : fibers) expect.push_back(ids);
    std::sort(expect.begin(), expect.end());
    if (ledger.partition() != expect) out.fail("partition differs from rank fibers over " + k.to_string());
    detail += k.to_string() + ": " + std::to_string(n) + " objects in " + std::to_string(expect.size()) + " classes; ";

    // Rank is multiplicative under composition.
    K0Ledger vu(pt, pt), ux(pt, pt), target(pt, pt);
    for (int i = 0; i < 50; ++i) {
      const CorrObject p1 = random_object(rng, pt, pt, b), p2 = random_object(rng, pt, pt, b);
      const std::int64_t c = rng.range(-2, 2), d = rng.range(-2, 2);
      const K0Class cls = k0_compose(vu, ux, {{vu.add(p1), c}}, {{ux.add(p2), d}}, target);
      const FormalSum sum(cls.coeffs.begin(), cls.coeffs.end());
      const auto r = target.rank_of(sum);
      const std::int64_t want = c * d * oracle_rank(p1) * oracle_rank(p2);
      if (!r || *r != want) out.fail("rank of composite class over " + k.to_string() + " at pair " + std::to_string(i));
      if (oracle_rank(compose_objects(p1, p2)) != oracle_rank(p1) * oracle_rank(p2))
        out.fail("composite object rank over " + k.to_string());
    }
  }
  if (out.ok) out.detail = detail + "50 composite ranks per field";
  return out;
}

Outcome odot_oracle() {
  Outcome out;
  for (int i = 0; i < 100; ++i) {
    const FieldTag k = kFields[i % 2];
    const VarietyPtr pt = point(k);
    Rng rng(500 + i);
    RandomBounds b;
    b.max_n = 3;
    const CorrMorphism a1 = random_morphism_from(rng, random_object(rng, pt, pt, b), b);
    const CorrMorphism a2 = random_morphism_from(rng, random_object(rng, pt, pt, b), b);
    const CorrMorphism got = compose_morphisms(a2, a1);
    if (!(dense(got.mat(), k) == oracle::kronecker(dense(a2.mat(), k), dense(a1.mat(), k))))
      out.fail("disagrees with the Kronecker oracle at case " + std::to_string(i));
  }
  std::string caught;
  for (FieldTag k : kFields) {
    int first = -1;
    for (int i = 0; i < 25 && first < 0; ++i)
      if (run_law_case("interchange", k, 42, i, true)) first = i;
    if (first < 0) out.fail("mutant survives 25 interchange cases over " + k.to_string());
    caught += " " + k.to_string() + "@" + std::to_string(first);
  }
  if (out.ok) out.detail = "100 oracle cases; mutant caught at case" + caught;
  return out;
}

Poly random_poly(Rng& rng, const RingPtr& r, int max_deg, int terms) {
  Poly f(r);
  for (int t = 0; t < terms; ++t) {
    Monomial::Storage e(r->nvars(), 0);
    int budget = rng.range(0, max_deg);
    for (std::size_t i = 0; i < r->nvars() && budget > 0; ++i) {
      const int d = rng.range(0, budget);
      e[i] = static_cast<Monomial::Exponent>(d);
      budget -= d;
    }
    f += Poly::term(r, Monomial(e), random_coeff(rng, r->field(), true));
  }
  return f;
}

Outcome groebner_kernel() {
  Outcome out;
  for (FieldTag k : kFields) {
    Rng rng(k.characteristic() + 3);
    for (MonomialOrder o : {MonomialOrder::DegRevLex, MonomialOrder::Lex}) {
      const RingPtr r = PolyRing::make(k, {"x", "y", "z"}, o);
      for (int batch = 0; batch < 5; ++batch) {
        std::vector<Poly> gens;
        for (int i = rng.range(1, 3); i > 0; --i) gens.push_back(random_poly(rng, r, 2, rng.range(1, 3)));
        const GroebnerBasis G = buchberger(r, gens);
        for (const auto& g : gens)
          if (!normal_form(g, G).is_zero()) out.fail("generator not in its ideal");
        for (int i = 0; i < 50; ++i) {
          const Poly f = random_poly(rng, r, 4, 4), g = random_poly(rng, r, 4, 4);
          const Poly nf = normal_form(f, G), ng = normal_form(g, G);
          if (normal_form(nf, G) != nf) out.fail("normal form is not idempotent");
          if (!normal_form(f - nf, G).is_zero()) out.fail("f - nf(f) outside the ideal");
          for (const auto& t : nf.terms())
            for (const auto& lead : G.gens())
              if (lead.leading().mono.divides(t.mono)) out.fail("normal form has a reducible term");
          if (normal_form(f + g, G) != normal_form(nf + ng, G)) out.fail("normal form not additive");
          if (normal_form(f * g, G) != normal_form(nf * ng, G)) out.fail("normal form not multiplicative");
          Poly combo(r);
          for (const auto& gen : gens) combo += gen * random_poly(rng, r, 1, 2);
          if (!normal_form(combo, G).is_zero()) out.fail("ideal combination not reduced to zero");
        }
      }
    }
  }
  const auto golden = oracle::read_golden(std::string(KCORR_TEST_DATA) + "/groebner_golden.txt");
  if (golden.size() != 5) out.fail("expected 5 pinned ideals");
  for (const auto& g : golden)
    if (const std::string why = oracle::check_golden(g); !why.empty()) out.fail(why);
  if (out.ok) out.detail = "500 polynomials per field, 5 pinned bases";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"law suite, 200 cases, seed 42", law_suite_green},
      {"strict associativity", [] { return families({"object-assoc", "odot-assoc"}, 200, 7); }},
      {"unit laws", [] { return families({"unit"}, 200, 7); }},
      {"graph functoriality", [] { return families({"sigma"}, 100, 7); }},
      {"box product laws", [] { return families({"box-compose", "box-graph", "box-functor", "box-square"}, 100, 7); }},
      {"rho isomorphism and naturality", [] { return families({"rho-roundtrip", "rho-natural"}, 100, 7); }},
      {"affine comparison predicates", affine_comparison},
      {"strict pullback and pushforward", [] { return families({"big-pullback", "big-pushforward"}, 100, 7); }},
      {"K0 of the point", k0_of_point},
      {"horizontal composite vs Kronecker oracle", odot_oracle},
      {"Groebner kernel", groebner_kernel},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu  %-42s %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
