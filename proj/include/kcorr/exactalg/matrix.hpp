#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "kcorr/error.hpp"

namespace kcorr {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// A grid of equally sized blocks, row-major.
template <class Scalar>
struct BlockGrid {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<DenseMatrix<Scalar>> blocks;

  const DenseMatrix<Scalar>& operator()(Eigen::Index a, Eigen::Index b) const { return blocks[a * cols + b]; }
  DenseMatrix<Scalar>& operator()(Eigen::Index a, Eigen::Index b) { return blocks[a * cols + b]; }
};

/// L: entry (i, j) of block (a, b) lands at (i + a*r, j + b*c) for r x c blocks.
template <class Scalar>
DenseMatrix<Scalar> flatten_blocks(const BlockGrid<Scalar>& grid, Eigen::Index r, Eigen::Index c) {
  if (static_cast<Eigen::Index>(grid.blocks.size()) != grid.rows * grid.cols)
    fail(ErrorKind::ShapeError, "block grid has " + std::to_string(grid.blocks.size()) + " blocks, expected " +
                                    std::to_string(grid.rows * grid.cols));
  for (const auto& b : grid.blocks)
    if (b.rows() != r || b.cols() != c)
      fail(ErrorKind::ShapeError, "ragged block of shape " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                                      ", expected " + std::to_string(r) + "x" + std::to_string(c));
  DenseMatrix<Scalar> out(grid.rows * r, grid.cols * c);
  for (Eigen::Index a = 0; a < grid.rows; ++a)
    for (Eigen::Index b = 0; b < grid.cols; ++b) out.block(a * r, b * c, r, c) = grid(a, b);
  return out;
}

/// Kronecker product with outer as the slow index: (i + a*n1, j + b*n1) = outer(a,b)*inner(i,j).
template <class Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& outer, const DenseMatrix<Scalar>& inner) {
  DenseMatrix<Scalar> out(outer.rows() * inner.rows(), outer.cols() * inner.cols());
  for (Eigen::Index a = 0; a < outer.rows(); ++a)
    for (Eigen::Index b = 0; b < outer.cols(); ++b)
      for (Eigen::Index i = 0; i < inner.rows(); ++i)
        for (Eigen::Index j = 0; j < inner.cols(); ++j)
          out(i + a * inner.rows(), j + b * inner.cols()) = outer(a, b) * inner(i, j);
  return out;
}

/// blockdiag(m_1, ..., m_k) with off-diagonal entries set to zero.
template <class Scalar>
DenseMatrix<Scalar> block_diag(const std::vector<DenseMatrix<Scalar>>& parts, const Scalar& zero) {
  Eigen::Index r = 0, c = 0;
  for (const auto& m : parts) {
    r += m.rows();
    c += m.cols();
  }
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Constant(r, c, zero);
  r = c = 0;
  for (const auto& m : parts) {
    out.block(r, c, m.rows(), m.cols()) = m;
    r += m.rows();
    c += m.cols();
  }
  return out;
}

/// The permutation matrix P with (P v)[perm[i]] = v[i].
template <class Scalar>
DenseMatrix<Scalar> permutation_matrix(const std::vector<Eigen::Index>& perm, const Scalar& zero, const Scalar& one) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Constant(n, n, zero);
  for (Eigen::Index i = 0; i < n; ++i) out(perm[i], i) = one;
  return out;
}

}  // namespace kcorr
