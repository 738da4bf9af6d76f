#ifndef MOMENTKERNEL_HANKEL_SPECTRUM_HPP
#define MOMENTKERNEL_HANKEL_SPECTRUM_HPP

#include <optional>
#include <vector>

#include "momentkernel/exact_linalg.hpp"
#include "momentkernel/moment_source.hpp"
#include "momentkernel/multi_index.hpp"
#include "momentkernel/types.hpp"

namespace momentkernel {

/// H_{R,N} = (s_{a+b} / R^{|a+b|}) over |a|, |b| <= N in graded-lex layout,
/// or the marginal compression J_N^j when `marginal` is set.
struct HankelTruncation {
  SourcePtr source;
  Rational radius{1};
  int degree = 0;
  IndexOrder order = IndexOrder::enumerate(1, 0);
  /// 1-based coordinate of a marginal compression.
  std::optional<int> marginal;
  unsigned precision_bits = kDefaultPrecisionBits;
  Matrix<Real> entries;
  /// Present when the source is exact.
  std::optional<Matrix<Rational>> exact_entries;

  Eigen::Index size() const noexcept { return entries.rows(); }
  bool is_exact() const noexcept { return exact_entries.has_value(); }
};

HankelTruncation assemble(const SourcePtr& source, const Rational& radius, int degree,
                          unsigned bits = kDefaultPrecisionBits);

/// J_N^j: the (N+1)x(N+1) Hankel matrix of moments supported on slot j
/// (1-based), i.e. the rows/columns of assemble(source, R, N) indexed by
/// multiples of e_j.
HankelTruncation assemble_marginal(const SourcePtr& source, int coordinate, int degree,
                                   const Rational& radius = Rational(1), unsigned bits = kDefaultPrecisionBits);

/// Same truncation at a different precision.
HankelTruncation reassemble(const HankelTruncation& h, unsigned bits);

struct SpectrumOptions {
  unsigned precision_ceiling = kDefaultPrecisionCeiling;
  /// Escalate while the absolute residual exceeds lambda_min / this.
  int trust_factor = 10;
};

struct SpectrumResult {
  std::vector<Real> eigenvalues;  // ascending
  Real lambda_min;
  /// Precision level of the final solve (the escalation step, in bits).
  unsigned precision_bits = 0;
  /// max_k ||H v_k - lambda_k v_k|| / ||H||_F, with rounding allowance.
  Real residual_bound;
  /// Same bound before normalization by ||H||_F.
  Real absolute_residual;
  /// Eigenvalues known to be exactly zero: the nullity in exact mode, and
  /// for float-mode products a lower bound from the exact factors.
  int exact_zero_count = 0;
  std::optional<int> exact_rank;
  int sweeps = 0;

  bool lambda_min_is_exact_zero() const noexcept { return exact_zero_count > 0; }
};

/// Full certified spectrum. Precision doubles (reassembling the matrix from
/// the source) until lambda_min is resolved, up to the ceiling. Zero
/// eigenvalues are decided by exact rank, either of H itself or of the
/// marginal compression of an exact factor.
SpectrumResult spectrum(const HankelTruncation& h, const SpectrumOptions& options = {});

/// Certified spectrum of an arbitrary symmetric matrix at its own precision,
/// without escalation.
SpectrumResult symmetric_spectrum(const Matrix<Real>& a, unsigned bits);

struct EigenSequenceEntry {
  int degree = 0;
  Eigen::Index matrix_size = 0;
  SpectrumResult spectrum;
};

/// lambda_{R,N} for N = 0..N_max.
std::vector<EigenSequenceEntry> eigen_sequence(const SourcePtr& source, const Rational& radius, int max_degree,
                                               unsigned bits = kDefaultPrecisionBits,
                                               const SpectrumOptions& options = {});

/// Exact rank and null vectors (coefficient vectors of p with L(p conj p) = 0
/// in the truncation's monomial order). Refused in float mode.
RankKernel rank_and_kernel(const HankelTruncation& h);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_HANKEL_SPECTRUM_HPP
