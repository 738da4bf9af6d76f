#ifndef MOMENTKERNEL_TORUS_DUALITY_HPP
#define MOMENTKERNEL_TORUS_DUALITY_HPP

#include <vector>

#include "momentkernel/hankel_spectrum.hpp"
#include "momentkernel/ortho_basis.hpp"

namespace momentkernel {

/// K_{a,b} = integral over the unit torus of P_a conj(P_b) with normalized
/// Lebesgue measure. Monomials are orthonormal there, so K = C C^T for the
/// basis coefficient matrix C; no quadrature is involved.
struct TorusGram {
  SourcePtr source;
  Rational radius{1};
  int degree = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
  Matrix<Real> entries;
  /// Squared coefficient norm of each P_alpha.
  std::vector<Real> coefficient_norms;
};

TorusGram build_torus_gram(const OrthoBasis& basis);

struct DualityReport {
  Real lambda_min;
  Real lambda_max_k;
  Real product;
  /// |lambda_min(H) lambda_max(K) - 1|
  Real deviation;
  /// Relative eigenvalue error bound of the product:
  /// abs_res(H)/lambda_min(H) + abs_res(K)/lambda_max(K).
  Real residual_bound;
  Real trace_k;
  SpectrumResult hankel_spectrum;
  SpectrumResult torus_spectrum;

  bool holds(int slack = 10) const { return deviation <= slack * residual_bound; }
};

/// lambda_min(H_{R,N}) * lambda_max(K_{R,N}) = 1, the reciprocal spectral
/// relation between the Hankel truncation and the torus Gram matrix.
DualityReport duality_check(const HankelTruncation& h, const TorusGram& k, const SpectrumOptions& options = {});

struct TraceBound {
  Real trace;
  /// trace recomputed as sum over alpha of the squared coefficient norm of P_alpha.
  Real coefficient_norm_sum;
  Real lambda_max;
  Real inverse_lambda_min;
  Real residual;
  /// 1/lambda_min <= lambda_max + residual <= trace + residual.
  bool holds = false;
};

TraceBound trace_bound_check(const TorusGram& k, const HankelTruncation& h, const SpectrumOptions& options = {});

}  // namespace momentkernel

#endif  // MOMENTKERNEL_TORUS_DUALITY_HPP
