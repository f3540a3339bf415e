#include "doctest.h"
#include "helpers.hpp"
#include "kcorr/bimod.hpp"
#include "kcorr/error.hpp"

using namespace kcorr;
using test::mat;
using test::Q;

TEST_CASE("presentations") {
  const VarietyPtr pt = point(Q()), t = test::two_pts();
  CHECK(to_bimodule(zero_object(pt, t)).n() == 0);
  const CorrObject ex = test::two_pts_example();
  const BimodulePresentation m = to_bimodule(ex);
  CHECK(m.x_actions.empty());
  REQUIRE(m.y_actions.size() == 1);
  CHECK(equal(m.y_actions[0], mat(pt, {{"1", "0"}, {"0", "0"}})));
  CHECK(m.violation().empty());
  CHECK(from_bimodule(m) == ex);

  for (FieldTag k : test::fields()) {
    Rng rng(51);
    const auto cat = catalogue(k);
    for (int i = 0; i < 30; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
      const CorrObject a = random_object(rng, x, y), b = random_object(rng, x, y);
      const BimodulePresentation s = to_bimodule(direct_sum(a, b)), ma = to_bimodule(a), mb = to_bimodule(b);
      CHECK(equal(s.proj, direct_sum(a, b).p()));
      for (std::size_t j = 0; j < s.y_actions.size(); ++j)
        CHECK(equal(s.y_actions[j].topLeftCorner(a.n(), a.n()), ma.y_actions[j]));
      for (std::size_t j = 0; j < s.x_actions.size(); ++j)
        CHECK(equal(s.x_actions[j].bottomRightCorner(b.n(), b.n()), mb.x_actions[j]));
      CHECK(from_bimodule(ma) == a);
    }
  }
  BimodulePresentation bad = m;
  bad.y_actions[0] = mat(pt, {{"2", "0"}, {"0", "0"}});
  CHECK_FALSE(bad.violation().empty());
  CHECK_THROWS_AS(from_bimodule(bad), Error);
}

TEST_CASE("morphism predicates agree with corrcat") {
  const CorrObject ex = test::two_pts_example();
  const BimodulePresentation m = to_bimodule(ex);
  const VarietyPtr pt = ex.X();
  CHECK(bimodule_hom_valid(m, m, ex.p()));
  CHECK(bimodule_hom_valid(m, m, mat(pt, {{"1", "0"}, {"0", "0"}})));
  CHECK_FALSE(bimodule_hom_valid(m, m, mat(pt, {{"0", "1"}, {"0", "0"}})));
  CHECK_FALSE(CorrMorphism(ex, ex, mat(pt, {{"0", "1"}, {"0", "0"}})).violation().empty());

  int valid = 0, invalid = 0;
  for (FieldTag k : test::fields()) {
    Rng rng(52);
    const auto cat = catalogue(k);
    for (int i = 0; i < 60; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat);
      const CorrMorphism a = random_morphism_from(rng, random_object(rng, x, y));
      QMatrix c = a.mat();
      if (i % 2 && c.size()) c(0, 0) = c(0, 0) + random_element(rng, x, 1);
      const bool lhs = CorrMorphism(a.src(), a.dst(), c).violation().empty();
      CHECK(lhs == bimodule_hom_valid(to_bimodule(a.src()), to_bimodule(a.dst()), c));
      (lhs ? valid : invalid)++;
    }
  }
  CHECK(valid > 0);
  CHECK(invalid > 0);
}

TEST_CASE("big bimodules") {
  const CorrObject ex = test::two_pts_example();
  const BigBimodule lift = big_lift(ex);
  CHECK(lift.cache_size() == 0);
  CHECK(restrict_R(lift) == to_bimodule(ex));
  const VarMorphism id = identity_morphism(ex.X());
  const BigBimodule same = big_pullback(id, lift);
  CHECK(same.base() == lift.base());
  REQUIRE(lift.cached(id) != nullptr);
  CHECK(*lift.cached(id) == lift.base());
  CHECK(big_pushforward(identity_morphism(ex.Y()), lift).base() == lift.base());
  CHECK(restrict_R(big_lift(zero_object(ex.X(), ex.Y()))).n() == 0);

  for (FieldTag k : test::fields()) {
    Rng rng(53);
    const auto cat = catalogue(k);
    for (int i = 0; i < 30; ++i) {
      const VarietyPtr x = rng.pick(cat), y = rng.pick(cat), x1 = rng.pick(cat), x2 = rng.pick(cat);
      const CorrObject phi = random_object(rng, x, y);
      const VarMorphism g = random_morphism(rng, x1, x), g1 = random_morphism(rng, x2, x1);
      const BigBimodule m = big_lift(phi);
      const BigBimodule staged = big_pullback(g1, big_pullback(g, m));
      CHECK(staged.base() == big_pullback(compose(g, g1), m).base());
      // Entrywise substitution along g o g1.
      const VarMorphism gg = compose(g, g1);
      CHECK(equal(restrict_R(staged).proj, gg.pull(phi.p())));
      CHECK(m.cache_size() >= 1);
      const std::size_t before = m.cache_size();
      big_pullback(compose(g, g1), m);
      CHECK(m.cache_size() == before);
    }
  }
}
