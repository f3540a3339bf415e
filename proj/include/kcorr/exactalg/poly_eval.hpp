#pragma once

#include <algorithm>
#include <map>

namespace kcorr {

struct MonomialLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(), b.exponents().begin(),
                                        b.exponents().end());
  }
};

/// Memoized monomial values m -> prod images[i]^m[i], built by peeling one
/// variable off the last nonzero position. Reusable across many polynomials
/// over the same images.
template <class R, class Mul>
class PowerTable {
 public:
  PowerTable(std::vector<R> images, R one, Mul mul)
      : images_(std::move(images)), one_(std::move(one)), mul_(std::move(mul)) {}

  const R& get(const Monomial& m) {
    if (m.is_one()) return one_;
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    std::size_t i = m.size();
    while (m[i - 1] == 0) --i;
    --i;
    auto exps = m.exponents();
    --exps[i];
    Monomial rest(exps);
    R value = rest.is_one() ? images_[i] : mul_(get(rest), images_[i]);
    return cache_.emplace(m, std::move(value)).first->second;
  }

  std::size_t arity() const { return images_.size(); }
  const R& one() const { return one_; }

 private:
  std::vector<R> images_;
  R one_;
  Mul mul_;
  std::map<Monomial, R, MonomialLexLess> cache_;
};

/// Substitute into f: variable i goes to the i-th image of the table, the
/// coefficient c of monomial m contributes scale(c, value(m)).
template <class R, class Mul, class Scale>
R evaluate(const Poly& f, PowerTable<R, Mul>& table, R zero, Scale scale) {
  R acc = std::move(zero);
  for (const auto& t : f.terms()) acc += scale(t.coeff, table.get(t.mono));
  return acc;
}

}  // namespace kcorr
