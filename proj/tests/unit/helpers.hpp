#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "kcorr/cli/random.hpp"

namespace test {

inline kcorr::FieldTag Q() { return kcorr::FieldTag::rational(); }
inline kcorr::FieldTag F5() { return kcorr::FieldTag::prime(5); }

/// Matrix over k[X] from rows of polynomial literals.
inline kcorr::QMatrix mat(const kcorr::VarietyPtr& x, std::initializer_list<std::initializer_list<const char*>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  kcorr::QMatrix m = kcorr::zeros(x->coords(), r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const char* e : row) m(i, j++) = x->parse(e);
    ++i;
  }
  return m;
}

inline kcorr::VarietyPtr two_pts(kcorr::FieldTag k = Q()) { return kcorr::make_variety("TwoPts", {"y"}, {"y^2 - y"}, k); }
inline kcorr::VarietyPtr a1(kcorr::FieldTag k = Q(), const std::string& name = "A1", const std::string& var = "x") {
  return kcorr::make_variety(name, {var}, {}, k);
}

/// The (pt, TwoPts, I2, diag(1,0)) example.
inline kcorr::CorrObject two_pts_example(kcorr::FieldTag k = Q()) {
  const auto pt = kcorr::point(k);
  return kcorr::make_correspondence(pt, two_pts(k), mat(pt, {{"1", "0"}, {"0", "1"}}), {mat(pt, {{"1", "0"}, {"0", "0"}})});
}

inline std::vector<kcorr::FieldTag> fields() { return {F5(), Q()}; }

}  // namespace test
