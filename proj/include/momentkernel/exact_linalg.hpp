#ifndef MOMENTKERNEL_EXACT_LINALG_HPP
#define MOMENTKERNEL_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "momentkernel/types.hpp"

namespace momentkernel {

struct RankKernel {
  int rank = 0;
  /// Null-space basis, each vector scaled to primitive integers with its
  /// last nonzero entry positive.
  std::vector<Vector<Rational>> kernel;
};

/// Exact rank and null space of a rational matrix by fraction-free
/// (Bareiss) elimination on the denominator-cleared integer matrix.
RankKernel rank_and_kernel(const Matrix<Rational>& a);

/// a = L * diag(d) * L^T with L unit lower triangular, no pivoting.
struct ExactLdl {
  Matrix<Rational> unit_lower;
  Vector<Rational> diagonal;
  /// L^{-1}; row k holds the monomial coefficients of the k-th monic
  /// orthogonal polynomial when `a` is a Hankel truncation.
  Matrix<Rational> inverse_lower;
};

/// Returns nullopt when a pivot is not strictly positive (the matrix is not
/// positive definite).
std::optional<ExactLdl> ldl_positive_definite(const Matrix<Rational>& a);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_EXACT_LINALG_HPP
