#include "kcorr/pairing.hpp"

#include "kcorr/error.hpp"

namespace kcorr {

QMatrix evaluate_blocks(Evaluator& phi1, Eigen::Index n1, const QMatrix& m) {
  BlockGrid<QElem> grid{m.rows(), m.cols(), {}};
  grid.blocks.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b) grid.blocks.push_back(phi1(m(a, b)));
  return flatten_blocks(grid, n1, n1);
}

CorrObject compose_objects(const CorrObject& phi1, const CorrObject& phi2) {
  require_same(phi1.Y(), phi2.X(), "composing correspondences");
  Evaluator ev(phi1);
  const Eigen::Index n1 = phi1.n();
  std::vector<QMatrix> gens;
  gens.reserve(phi2.gens().size());
  for (const auto& a : phi2.gens()) gens.push_back(evaluate_blocks(ev, n1, a));
  CorrObject out(phi1.X(), phi2.Y(), evaluate_blocks(ev, n1, phi2.p()), std::move(gens));
  const std::string v = out.violation();
  if (!v.empty()) fail(ErrorKind::InternalLawViolation, "composite object: " + v);
  return out;
}

namespace {

QMatrix diagonal_copies(const QMatrix& m, Eigen::Index copies, const CoordPtr& ctx) {
  QMatrix out = zeros(ctx, copies * m.rows(), copies * m.cols());
  for (Eigen::Index k = 0; k < copies; ++k) out.block(k * m.rows(), k * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

CorrMorphism odot(const CorrMorphism& alpha2, const CorrMorphism& alpha1, bool shuffled) {
  require_same(alpha1.src().Y(), alpha2.src().X(), "composing morphisms");
  const CorrObject src = compose_objects(alpha1.src(), alpha2.src());
  const CorrObject dst = compose_objects(alpha1.dst(), alpha2.dst());
  Evaluator ev(alpha1.dst());
  const Eigen::Index n1 = alpha1.dst().n();
  QMatrix left = evaluate_blocks(ev, n1, alpha2.mat());
  if (shuffled) {
    const Eigen::Index r2 = alpha2.mat().rows(), c2 = alpha2.mat().cols();
    QMatrix t(left.rows(), left.cols());
    for (Eigen::Index a = 0; a < r2; ++a)
      for (Eigen::Index i = 0; i < n1; ++i)
        for (Eigen::Index b = 0; b < c2; ++b)
          for (Eigen::Index j = 0; j < n1; ++j) t(a + i * r2, b + j * c2) = left(i + a * n1, j + b * n1);
    left = t;
  }
  const QMatrix right = diagonal_copies(alpha1.mat(), alpha2.mat().cols(), alpha1.src().X()->coords());
  CorrMorphism out(src, dst, mul(left, right));
  if (debug_validation() && !shuffled) {
    const std::string v = out.violation();
    if (!v.empty()) fail(ErrorKind::InternalLawViolation, "horizontal composite: " + v);
  }
  return out;
}

}  // namespace

CorrMorphism compose_morphisms(const CorrMorphism& alpha2, const CorrMorphism& alpha1) {
  return odot(alpha2, alpha1, false);
}

CorrMorphism compose_morphisms_shuffled(const CorrMorphism& alpha2, const CorrMorphism& alpha1) {
  return odot(alpha2, alpha1, true);
}

bool strict_associativity_check(const CorrObject& phi1, const CorrObject& phi2, const CorrObject& phi3) {
  return compose_objects(compose_objects(phi1, phi2), phi3) == compose_objects(phi1, compose_objects(phi2, phi3));
}

IsoCertificate sum_left_certificate(const CorrObject& phi1, const CorrObject& phi1b, const CorrObject& phi2) {
  const CorrObject lhs = compose_objects(direct_sum(phi1, phi1b), phi2);
  const CorrObject a = compose_objects(phi1, phi2), b = compose_objects(phi1b, phi2);
  const CorrObject rhs = direct_sum(a, b);
  const Eigen::Index n1 = phi1.n(), m1 = phi1b.n(), n2 = phi2.n();
  const FlattenMap in{n1 + m1, n2}, left{n1, n2}, right{m1, n2};
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(in.size()));
  for (Eigen::Index outer = 0; outer < n2; ++outer)
    for (Eigen::Index i = 0; i < n1 + m1; ++i)
      perm[in(i, outer)] = i < n1 ? left(i, outer) : left.size() + right(i - n1, outer);
  const CoordPtr& ctx = phi1.X()->coords();
  const QMatrix P = permutation_matrix<QElem>(perm, QElem::normal(ctx, Poly(ctx->ring)), phi1.X()->constant(Coeff::one(ctx->ring->field())));
  IsoCertificate cert{CorrMorphism(lhs, rhs, mul(P, lhs.p())), CorrMorphism(rhs, lhs, mul(P.transpose(), rhs.p()))};
  if (!verify_iso(cert)) fail(ErrorKind::InternalLawViolation, "left bilinearity permutation is not an isomorphism");
  return cert;
}

IsoCertificate sum_right_certificate(const CorrObject& phi1, const CorrObject& phi2, const CorrObject& phi2b) {
  const CorrObject lhs = compose_objects(phi1, direct_sum(phi2, phi2b));
  const CorrObject rhs = direct_sum(compose_objects(phi1, phi2), compose_objects(phi1, phi2b));
  if (lhs != rhs) fail(ErrorKind::InternalLawViolation, "right bilinearity is not a data equality");
  IsoCertificate cert{identity_morphism(lhs), identity_morphism(rhs)};
  if (!verify_iso(cert)) fail(ErrorKind::InternalLawViolation, "right bilinearity identity certificate failed");
  return cert;
}

}  // namespace kcorr
