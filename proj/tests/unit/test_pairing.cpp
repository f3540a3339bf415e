#include "doctest.h"
#include "helpers.hpp"
#include "kcorr/error.hpp"
#include "kcorr/k0.hpp"
#include "oracles/bridge.hpp"

using namespace kcorr;
using test::mat;
using test::Q;


TEST_CASE("flatten map") {
  const FlattenMap l{3, 2};
  CHECK(l.size() == 6);
  CHECK(l(2, 1) == 5);
  CHECK(l.inner(4) == 1);
  CHECK(l.outer(4) == 1);
  const FlattenMap one{2, 1};
  CHECK(one(1, 0) == 1);
}

TEST_CASE("composition over the point is a Kronecker product") {
  RandomBounds b;
  b.max_n = 3;
  for (FieldTag k : test::fields()) {
    Rng rng(31);
    const VarietyPtr pt = point(k);
    for (int i = 0; i < 40; ++i) {
      const CorrObject p1 = random_object(rng, pt, pt, b), p2 = random_object(rng, pt, pt, b);
      const CorrObject c = compose_objects(p1, p2);
      CHECK(oracle::from_matrix(c.p(), k.characteristic()) ==
            oracle::kronecker(oracle::from_matrix(p2.p(), k.characteristic()), oracle::from_matrix(p1.p(), k.characteristic())));
      CHECK(oracle::rank(oracle::from_matrix(c.p(), k.characteristic())) == rank(p1) * rank(p2));
    }
  }
}

TEST_CASE("horizontal composite") {
  for (FieldTag k : test::fields()) {
    Rng rng(32);
    const auto cat = catalogue(k);
    for (int i = 0; i < 40; ++i) {
      const VarietyPtr v = rng.pick(cat), u = rng.pick(cat), x = rng.pick(cat);
      const CorrObject p1 = random_object(rng, v, u), p2 = random_object(rng, u, x);
      CHECK(compose_morphisms(identity_morphism(p2), identity_morphism(p1)) == identity_morphism(compose_objects(p1, p2)));
      const CorrMorphism a1 = random_morphism_from(rng, p1), a2 = random_morphism_from(rng, p2);
      const CorrMorphism a = compose_morphisms(a2, a1);
      CHECK(a.violation().empty());
      CHECK(is_zero(compose_morphisms(zero_morphism(p2, a2.dst()), a1).mat()));
      CHECK(is_zero(compose_morphisms(a2, zero_morphism(p1, a1.dst())).mat()));
    }
  }
  const VarietyPtr pt = point(Q());
  const CorrObject half = make_correspondence(pt, pt, mat(pt, {{"1", "0"}, {"0", "0"}}), {});
  const CorrMorphism a = identity_morphism(half);
  CHECK_THROWS_AS(compose_morphisms(a, identity_morphism(test::two_pts_example())), Error);
}

TEST_CASE("strict associativity") {
  const VarietyPtr a = test::a1();
  const VarMorphism sq = make_morphism(a, a, std::vector<std::string>{"x^2"});
  const VarMorphism sh = make_morphism(a, a, std::vector<std::string>{"x + 1"});
  CHECK(strict_associativity_check(graph_object(sq), graph_object(sh), graph_object(sq)));
  CHECK(compose_objects(compose_objects(graph_object(sq), graph_object(sh)), graph_object(sq)) ==
        graph_object(compose(sq, compose(sh, sq))));
  for (FieldTag k : test::fields()) {
    Rng rng(33);
    const auto cat = catalogue(k);
    for (int i = 0; i < 40; ++i) {
      const VarietyPtr v = rng.pick(cat), u = rng.pick(cat), w = rng.pick(cat), x = rng.pick(cat);
      const CorrObject p1 = random_object(rng, v, u), p2 = random_object(rng, u, w), p3 = random_object(rng, w, x);
      CHECK(strict_associativity_check(p1, p2, p3));
      CHECK(strict_associativity_check(zero_object(v, u), p2, p3));
      CHECK(strict_associativity_check(p1, zero_object(u, w), p3));
      CHECK(compose_objects(compose_objects(p1, zero_object(u, w)), p3).n() == 0);
    }
  }
}

TEST_CASE("bilinearity certificates") {
  for (FieldTag k : test::fields()) {
    Rng rng(34);
    const auto cat = catalogue(k);
    for (int i = 0; i < 20; ++i) {
      const VarietyPtr v = rng.pick(cat), u = rng.pick(cat), x = rng.pick(cat);
      const CorrObject p1 = random_object(rng, v, u), p1b = random_object(rng, v, u), p2 = random_object(rng, u, x);
      CHECK(verify_iso(sum_left_certificate(p1, p1b, p2)));
      CHECK(verify_iso(sum_right_certificate(p1, p2, random_object(rng, u, x))));
    }
  }
}

TEST_CASE("horizontal composites are morphisms") {
  int checked = 0;
  for (FieldTag k : test::fields()) {
    Rng rng(35);
    const auto cat = catalogue(k);
    for (int i = 0; i < 250; ++i, ++checked) {
      const VarietyPtr v = rng.pick(cat), u = rng.pick(cat), x = rng.pick(cat);
      const CorrMorphism a1 = random_morphism_from(rng, random_object(rng, v, u));
      const CorrMorphism a2 = random_morphism_from(rng, random_object(rng, u, x));
      const CorrMorphism a = compose_morphisms(a2, a1);
      CHECK(a.violation().empty());
      CHECK(a.src() == compose_objects(a1.src(), a2.src()));
      CHECK(a.dst() == compose_objects(a1.dst(), a2.dst()));
    }
  }
  CHECK(checked == 500);
}
