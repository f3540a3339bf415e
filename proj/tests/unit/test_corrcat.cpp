#include "doctest.h"
#include "helpers.hpp"
#include "kcorr/error.hpp"
#include "kcorr/k0.hpp"

using namespace kcorr;
using test::mat;
using test::Q;

TEST_CASE("evaluation") {
  const CorrObject phi = test::two_pts_example();
  CHECK(equal(eval_nonunital(phi, "1"), phi.p()));
  CHECK(is_zero(eval_nonunital(phi, "y^2 - y")));
  CHECK(equal(eval_nonunital(phi, "3*y"), mat(phi.X(), {{"3", "0"}, {"0", "0"}})));
  CHECK_THROWS_AS(eval_nonunital(phi, "z"), Error);

  for (FieldTag k : test::fields()) {
    Rng rng(21);
    const auto cat = catalogue(k);
    for (int i = 0; i < 40; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
      const CorrObject obj = random_object(rng, x, y);
      Evaluator ev(obj);
      for (std::size_t j = 0; j < y->nvars(); ++j) {
        const Poly v = Poly::variable(y->ring(), j);
        const QMatrix a = ev(v);
        CHECK(equal(ev((v + 1) * (v + 1)), mul(a, a) + a + a + obj.p()));
      }
    }
  }
}

TEST_CASE("make_correspondence") {
  const VarietyPtr pt = point(Q()), t = test::two_pts();
  const CorrObject half = make_correspondence(pt, pt, mat(pt, {{"1", "0"}, {"0", "0"}}), {});
  CHECK(rank(half) == 1);
  CHECK(test::two_pts_example().violation().empty());
  try {
    make_correspondence(pt, t, mat(pt, {{"1"}}), {mat(pt, {{"2"}})});
    FAIL("accepted y = 2 on TwoPts");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidObject);
    CHECK(std::string(e.what()).find("relation") != std::string::npos);
  }
  CHECK_THROWS_AS(make_correspondence(pt, pt, mat(pt, {{"1", "1"}, {"0", "1"}}), {}), Error);
  CHECK_THROWS_AS(make_correspondence(pt, t, mat(pt, {{"1"}}), {}), Error);
  const VarietyPtr a = test::a1();
  // A_x outside the corner.
  CHECK_THROWS_AS(make_correspondence(pt, a, mat(pt, {{"1", "0"}, {"0", "0"}}), {mat(pt, {{"0", "1"}, {"0", "0"}})}), Error);
  const CorrObject z = zero_object(pt, t);
  CHECK(z.n() == 0);
  CHECK(z.violation().empty());
}

TEST_CASE("graph objects") {
  const VarietyPtr pt = point(Q()), a = test::a1();
  const CorrObject g = graph_object(identity_morphism(pt));
  CHECK(g.n() == 1);
  CHECK(equal(g.p(), mat(pt, {{"1"}})));
  const CorrObject sq = graph_object(make_morphism(a, a, std::vector<std::string>{"x^2"}));
  CHECK(equal(sq.gen(0), mat(a, {{"x^2"}})));
  CHECK(identity_object(a) == graph_object(identity_morphism(a)));
}

TEST_CASE("direct sums") {
  for (FieldTag k : test::fields()) {
    Rng rng(8);
    const VarietyPtr pt = point(k);
    const auto cat = catalogue(k);
    for (int i = 0; i < 30; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
      const CorrObject a = random_object(rng, x, y), b = random_object(rng, x, y), c = random_object(rng, x, y);
      CHECK(direct_sum(a, zero_object(x, y)) == a);
      CHECK(direct_sum(zero_object(x, y), a) == a);
      CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
      CHECK(direct_sum(a, b).violation().empty());
      for (int s = 0; s < 2; ++s) {
        CHECK(sum_injection(a, b, s).violation().empty());
        CHECK(sum_projection(a, b, s).violation().empty());
        for (int t = 0; t < 2; ++t) {
          const CorrMorphism pi = compose_vertical(sum_projection(a, b, t), sum_injection(a, b, s));
          const CorrObject& o = s == 0 ? a : b;
          if (s == t) CHECK(pi == identity_morphism(o));
          else CHECK(is_zero(pi.mat()));
        }
      }
      const CorrMorphism sum = compose_vertical(sum_injection(a, b, 0), sum_projection(a, b, 0)) +
                               compose_vertical(sum_injection(a, b, 1), sum_projection(a, b, 1));
      CHECK(sum == identity_morphism(direct_sum(a, b)));
      const CorrObject p = random_object(rng, pt, pt), q = random_object(rng, pt, pt);
      CHECK(rank(direct_sum(p, q)) == rank(p) + rank(q));
    }
  }
}

TEST_CASE("morphism validity") {
  const CorrObject phi = test::two_pts_example();
  const VarietyPtr pt = phi.X();
  CHECK(make_corr_morphism(phi, phi, phi.p()) == identity_morphism(phi));
  CHECK(make_corr_morphism(phi, phi, zeros(pt->coords(), 2, 2)) == zero_morphism(phi, phi));
  CHECK_NOTHROW(make_corr_morphism(phi, phi, mat(pt, {{"1", "0"}, {"0", "0"}})));
  try {
    make_corr_morphism(phi, phi, mat(pt, {{"0", "1"}, {"0", "0"}}));
    FAIL("e12 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidMorphism);
  }
  CHECK_THROWS_AS(make_corr_morphism(phi, phi, mat(pt, {{"1"}})), Error);
}

TEST_CASE("vertical composition") {
  for (FieldTag k : test::fields()) {
    Rng rng(4);
    const auto cat = catalogue(k);
    for (int i = 0; i < 40; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
      const CorrObject phi = random_object(rng, x, y);
      const CorrMorphism a = random_morphism_from(rng, phi);
      const CorrMorphism b = random_morphism_from(rng, a.dst());
      const CorrMorphism c = random_morphism_from(rng, b.dst());
      CHECK(compose_vertical(identity_morphism(a.dst()), a) == a);
      CHECK(compose_vertical(a, identity_morphism(phi)) == a);
      CHECK(is_zero(compose_vertical(a, zero_morphism(phi, phi)).mat()));
      CHECK(compose_vertical(compose_vertical(c, b), a) == compose_vertical(c, compose_vertical(b, a)));
      CHECK(compose_vertical(b, a).violation().empty());
    }
  }
}

TEST_CASE("isomorphism certificates") {
  const VarietyPtr pt = point(Q());
  const CorrObject half = make_correspondence(pt, pt, mat(pt, {{"1", "0"}, {"0", "0"}}), {});
  CHECK(verify_iso({identity_morphism(half), identity_morphism(half)}));
  // p' = u p u^-1 for u = [[1,2],[0,1]].
  const QMatrix u = mat(pt, {{"1", "2"}, {"0", "1"}}), ui = mat(pt, {{"1", "-2"}, {"0", "1"}});
  const CorrObject conj = make_correspondence(pt, pt, mul(mul(u, half.p()), ui), {});
  const IsoCertificate cert{CorrMorphism(half, conj, mul(mul(conj.p(), u), half.p())),
                            CorrMorphism(conj, half, mul(mul(half.p(), ui), conj.p()))};
  CHECK(verify_iso(cert));
  CHECK_FALSE(verify_iso({zero_morphism(half, conj), zero_morphism(conj, half)}));
  for (FieldTag k : test::fields()) {
    Rng rng(9);
    const auto cat = catalogue(k);
    for (int i = 0; i < 30; ++i) {
      const CorrObject phi = random_object(rng, rng.pick(cat), rng.pick(cat));
      CHECK(verify_iso(random_conjugate(rng, phi)));
    }
  }
}
