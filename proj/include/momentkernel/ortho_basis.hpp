#ifndef MOMENTKERNEL_ORTHO_BASIS_HPP
#define MOMENTKERNEL_ORTHO_BASIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "momentkernel/exact_linalg.hpp"
#include "momentkernel/hankel_spectrum.hpp"
#include "momentkernel/moment_source.hpp"
#include "momentkernel/types.hpp"

namespace momentkernel {

/// Raised when H_{R,N} is singular, so no orthonormal basis to degree N
/// exists. In exact mode `null_vector` holds the coefficients of a
/// polynomial p with L(p conj p) = 0.
struct DegenerateBasisError : MomentError {
  DegenerateBasisError(const std::string& what, std::optional<Vector<Rational>> null_vector)
      : MomentError(what), null_vector(std::move(null_vector)) {}
  std::optional<Vector<Rational>> null_vector;
};

/// Orthonormal polynomials P_{R,alpha} up to total degree N.
///
/// Row alpha of `coefficients` holds the monomial coefficients of
/// P_{R,alpha} in the graded-lex order; the matrix is lower triangular with
/// a positive diagonal, so it is the inverse of the Cholesky factor of
/// H_{R,N}.
struct OrthoBasis {
  SourcePtr source;
  Rational radius{1};
  int degree = 0;
  IndexOrder order = IndexOrder::enumerate(1, 0);
  /// Precision the caller asked for.
  unsigned precision_bits = kDefaultPrecisionBits;
  /// Precision the coefficients are carried in (>= precision_bits).
  unsigned working_bits = kDefaultPrecisionBits;
  Matrix<Real> coefficients;
  /// H_{R,N} at working precision, used for inner products.
  Matrix<Real> gram;
  /// max |(C H C^T - I)_{ab}|.
  Real gram_residual;
  /// Rational LDL of H_{R,N} when the source is exact.
  std::optional<ExactLdl> exact;
  std::optional<Matrix<Rational>> exact_gram;

  Eigen::Index size() const noexcept { return coefficients.rows(); }
};

struct BasisOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned precision_ceiling = kDefaultPrecisionCeiling;
};

/// Gram residual target for a requested precision: 10^(-0.24 * bits).
Real gram_tolerance(unsigned bits);

OrthoBasis build_basis(const SourcePtr& source, const Rational& radius, int degree, const BasisOptions& options = {});

/// Parses "re,im;re,im" (one pair per coordinate) into a complex point. A
/// coordinate may also be given as a single real number.
std::vector<Complex> parse_point(std::string_view text, unsigned bits);

/// z^gamma for every gamma in `order`.
std::vector<Complex> monomials(const IndexOrder& order, std::span<const Complex> z);

/// P_{R,alpha}(z) for every alpha in the basis order.
std::vector<Complex> evaluate(const OrthoBasis& basis, std::span<const Complex> z);

enum class KernelShape { total_degree, box };

struct KernelEvaluation {
  std::vector<Complex> point;
  KernelShape shape = KernelShape::total_degree;
  /// partial_sums[n] = sum of |P_alpha(z)|^2 over |alpha| <= n (total) or
  /// max_j alpha_j <= n (box).
  std::vector<Real> partial_sums;
};

/// Largest n for which the shape's index set fits inside the basis.
int kernel_max_index(const OrthoBasis& basis, KernelShape shape);

KernelEvaluation kernel_sum(const OrthoBasis& basis, std::span<const Complex> z,
                            KernelShape shape = KernelShape::total_degree);

/// sum_alpha <p, P_alpha> P_alpha(y) through the basis; equals p(y) when
/// deg p <= N.
Complex truncated_kernel_apply(const OrthoBasis& basis, const Polynomial<Real>& p, std::span<const Complex> y);

/// Exact version over the rational LDL: sum_k <p, Q_k> Q_k(y) / d_k with
/// Q_k the monic orthogonal polynomials.
Rational truncated_kernel_apply(const OrthoBasis& basis, const Polynomial<Rational>& p, std::span<const Rational> y);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_ORTHO_BASIS_HPP
