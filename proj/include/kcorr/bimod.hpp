#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kcorr/corrcat.hpp"

namespace kcorr {

/// A k[X x Y]-module presented as the image of an idempotent, with the
/// coordinates of X and Y acting by corner matrices.
struct BimodulePresentation {
  VarietyPtr X;
  VarietyPtr Y;
  QMatrix proj;
  std::vector<QMatrix> x_actions;
  std::vector<QMatrix> y_actions;

  Eigen::Index n() const { return proj.rows(); }
  VarietyPtr ambient() const { return product(X, Y); }
  /// First violated invariant, or empty.
  std::string violation() const;
  friend bool operator==(const BimodulePresentation& a, const BimodulePresentation& b);
};

BimodulePresentation to_bimodule(const CorrObject& phi);
/// The inverse re-tagging; validates and throws InvalidObject on failure.
CorrObject from_bimodule(const BimodulePresentation& m);

/// mat is a k[X x Y]-linear map im(P.proj) -> im(Q.proj).
bool bimodule_hom_valid(const BimodulePresentation& P, const BimodulePresentation& Q, const QMatrix& mat);

/// Pullback along g: X' -> X, with the coordinates of X' acting on the result.
BimodulePresentation pullback_presentation(const VarMorphism& g, const BimodulePresentation& m);
/// Pushforward along h: Y -> Y'.
BimodulePresentation pushforward_presentation(const VarMorphism& h, const BimodulePresentation& m);

/// A bimodule with a strictly functorial family of pullbacks.
///
/// Every value is the pullback of a fixed origin presentation along a
/// structure map into the origin's base. Values are memoized by the normal
/// form of that structure map, so pulling back in stages and pulling back
/// along the composite land on the same cache entry.
class BigBimodule {
 public:
  using Cache = std::map<std::string, BimodulePresentation>;

  /// The value over X (restriction to the base).
  const BimodulePresentation& base() const { return base_; }
  const BimodulePresentation& origin() const { return family_->origin; }
  const VarMorphism& structure() const { return structure_; }
  std::size_t cache_size() const;
  /// Cached value for pulling back along g: X' -> X, if present.
  const BimodulePresentation* cached(const VarMorphism& g) const;

  friend BigBimodule big_lift(const CorrObject& phi);
  friend BigBimodule big_pullback(const VarMorphism& g, const BigBimodule& m);
  friend BigBimodule big_pushforward(const VarMorphism& h, const BigBimodule& m);

 private:
  struct Family {
    BimodulePresentation origin;
    std::mutex mu;
    Cache cache;
  };
  BigBimodule(std::shared_ptr<Family> family, VarMorphism structure, BimodulePresentation base)
      : family_(std::move(family)), structure_(std::move(structure)), base_(std::move(base)) {}
  // Value along the composite structure o g, computed once per key.
  BimodulePresentation along(const VarMorphism& g) const;

  std::shared_ptr<Family> family_;
  VarMorphism structure_;
  BimodulePresentation base_;
};

BigBimodule big_lift(const CorrObject& phi);
BigBimodule big_pullback(const VarMorphism& g, const BigBimodule& m);
BigBimodule big_pushforward(const VarMorphism& h, const BigBimodule& m);
BimodulePresentation restrict_R(const BigBimodule& m);

/// Canonical text of a variety morphism's data, used as a cache key.
std::string morphism_key(const VarMorphism& f);

}  // namespace kcorr
