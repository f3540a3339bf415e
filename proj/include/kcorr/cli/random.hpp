#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kcorr/functors.hpp"

namespace kcorr {

/// Deterministic source of small random choices.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n ? g_() % n : 0; }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  std::uint64_t next() { return g_(); }

 private:
  std::mt19937_64 g_;
};

struct RandomBounds {
  int max_n = 2;
  int max_degree = 1;
  int elementary = 3;
  int resample_budget = 64;
};

/// Small varieties the harness draws from: pt, A1, TwoPts, Gm.
std::vector<VarietyPtr> catalogue(FieldTag field);

Coeff random_coeff(Rng& rng, FieldTag field, bool nonzero = false);
/// A random element of k[X] of total degree <= degree.
QElem random_element(Rng& rng, const VarietyPtr& x, int degree);
/// A k[X]-point of Y: images of Y's coordinates satisfying its relations.
std::vector<QElem> random_point(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b = {});
VarMorphism random_morphism(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b = {});

/// u and u^{-1} for u a product of elementary matrices over k[X].
std::pair<QMatrix, QMatrix> random_unimodular(Rng& rng, const VarietyPtr& x, Eigen::Index n, const RandomBounds& b = {});

CorrObject random_object(const VarietyPtr& x, const VarietyPtr& y, std::uint64_t seed, const RandomBounds& b = {});
CorrObject random_object(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, const RandomBounds& b = {});
/// A random endomorphism: c * eval(q) for c in k[X], q in k[Y].
CorrMorphism random_endomorphism(Rng& rng, const CorrObject& phi, const RandomBounds& b = {});
/// A conjugate copy u Phi u^{-1} with its certificate Phi -> copy.
IsoCertificate random_conjugate(Rng& rng, const CorrObject& phi, const RandomBounds& b = {});
/// A random morphism phi -> (random conjugate of phi).
CorrMorphism random_morphism_from(Rng& rng, const CorrObject& phi, const RandomBounds& b = {});
/// Random object with n certified commuting automorphisms.
AutObject random_aut_object(Rng& rng, const VarietyPtr& x, const VarietyPtr& y, int n, const RandomBounds& b = {});

}  // namespace kcorr
